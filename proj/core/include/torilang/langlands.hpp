#pragma once

#include "torilang/cohomology.hpp"

#include <complex>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace torilang {

/// A torus over a local field: the cocharacter lattice X_*(T) as a module over
/// the finite Galois quotient of the datum. The dual torus has character group X_*.
struct TorusDatum {
  LocalGaloisDatum field;
  GammaModule cochar;

  /// Throws AlgebraError for an invalid datum, a non-free lattice or a group mismatch.
  void check() const;
  bool is_unramified() const;
  /// Wild inertia acts trivially.
  bool is_tame() const;
};

/// Unramified torus: Frobenius acts on Z^r by sigma, Galois group cyclic of order ord(sigma).
TorusDatum unramified_torus(const IntMatrix& sigma, long p, long q);

struct NamedTorus {
  std::string name;
  TorusDatum torus;
};

/// Split and unramified tori from finite-order matrices plus ramified and
/// tame examples (norm-one tori, S3 and Z/4 data).
std::vector<NamedTorus> torus_catalog(long p = 3, long q = 3);
NamedTorus torus_by_name(const std::string& name, long p, long q);

/// Frobenius invariants of the inertia coinvariants of X_*.
FinAbGroup kottwitz_quotient(const TorusDatum& t);

struct WeaklyUnramified {
  FinAbGroup group;
  FinAbGroup way1;  // dual of kottwitz_quotient
  FinAbGroup way2;  // dual of {x : (F - 1)x in R_I} / R_I with R_I spanned by (g - 1)X_*, g in I
};

/// Throws AlgebraError("convention-mismatch") if the two computations differ.
WeaklyUnramified weakly_unramified_chars(const TorusDatum& t);

/// X_* / (q sigma - 1) X_* for an unramified torus; throws AlgebraError("not-unramified").
FinAbGroup special_fiber_points(const TorusDatum& t);
FinAbGroup special_fiber_points(const TorusDatum& t, long q);

/// Element of inertia whose image generates inertia / wild.
std::size_t tame_generator(const LocalGaloisDatum& d);
/// Order of the image of g in gamma / wild.
std::size_t order_mod_wild(const LocalGaloisDatum& d, std::size_t g);

/// Frobenius-stable classes in H^1(tame inertia, Hom(C, C^x)), for a module C
/// on which wild inertia acts trivially, with tame inertia modelled by Z/M.
FinAbGroup tame_stable_classes(const GammaModule& c, const LocalGaloisDatum& d, const Integer& tame_level);
/// Default tame level e (q^k - 1), with e = [inertia : wild] and k the order of
/// Frobenius modulo wild inertia.
Integer default_tame_level(const LocalGaloisDatum& d);
/// tame_stable_classes at the default level, checked against a multiple of it;
/// throws AlgebraError("no-stabilization").
FinAbGroup tame_stable_classes(const GammaModule& c, const LocalGaloisDatum& d);

/// Inertial depth-zero parameters for a tame torus; throws AlgebraError("wild-action").
FinAbGroup depth_zero_inertial_params(const TorusDatum& t);

FinAbGroup prime_to_p_part(const FinAbGroup& g, long p);

struct DepthZeroPiece {
  std::string name;
  FinAbGroup character_side;
  FinAbGroup parameter_side;
  bool compared = true;
  bool pass = false;
};

struct DepthZeroReport {
  std::vector<DepthZeroPiece> pieces;
  bool ok() const;
};

DepthZeroReport verify_depth_zero_match(const TorusDatum& t);

/// Root datum with a Galois action: characters X^*, cocharacters X_*, roots in
/// X^*, coroots in X_*, and the pairing <x, y> = x^T P y.
struct RootDatumGamma {
  GammaModule x_star;
  GammaModule x_costar;
  std::vector<IntVector> roots;
  std::vector<IntVector> coroots;
  IntMatrix pairing;

  const FiniteGroup& group() const { return x_costar.acting_group(); }
  /// Throws AlgebraError naming the failed axiom.
  void check() const;
};

/// SL2, PGL2, GL2, SL3, PGL3, GL1 with trivial action.
RootDatumGamma split_root_datum(const std::string& name, const FiniteGroup& g);
/// PGL3 with the diagram automorphism acting through the complement of `index_two`.
RootDatumGamma unitary_pgl3(const FiniteGroup& g, const Subgroup& index_two);

/// pi_1 = X_* / Z Phi^vee with the induced action; its character group is Z(G^vee).
GammaModule center_dual(const RootDatumGamma& r);
/// The projection X_* -> pi_1.
ModuleMap cochar_to_pi1(const RootDatumGamma& r);

struct CenterToTorus {
  CharacterH1 center;
  CharacterH1 torus;
  AbHom map;
};

/// H^1(S, Z(G^vee)) -> H^1(S, T^vee) induced by an equivariant surjection
/// X_*(T) -> pi_1 given by `to_pi1` (pi_1.dim x X_*(T).dim).
CenterToTorus center_to_torus_map(const RootDatumGamma& r, const GammaModule& torus_cochar,
                                  const IntMatrix& to_pi1, const Subgroup& s);

/// Finite model Z/M x| Z/K of the tame Weil group: element a + M b is t^a F^b
/// with F t F^-1 = t^q.
struct WeilModel {
  FiniteGroup group;
  long tame_level = 1;
  long frob_order = 1;
  std::size_t tau = 0;    // generator of the tame part
  std::size_t frob = 0;
};

WeilModel weil_model(long tame_level, long frob_order, long q);
/// A module over gamma on which wild inertia acts trivially, pulled back to the model.
GammaModule pull_back_to_weil(const GammaModule& c, const LocalGaloisDatum& d, const WeilModel& w);

struct CenterClasses {
  FinAbGroup unramified;  // dual of Frobenius invariants of inertia coinvariants of pi_1
  FinAbGroup tame;        // Frobenius-stable tame classes
  std::optional<FinAbGroup> total;  // H^1 of the finite Weil model, when coefficients are finite
  std::optional<WeilModel> model;
  FinAbGroup group;       // total if known, otherwise unramified + tame
  bool orders_consistent = true;
};

/// Depth-zero central classes with coefficients in Z(G^vee)^P. `tame_level` and
/// `frob_order` pick the finite Weil model (defaults: default_tame_level and k times the
/// exponent of the coefficients).
/// The model is skipped when its order would exceed 600 and no level is given.
CenterClasses depth_zero_center_classes(const RootDatumGamma& r, const LocalGaloisDatum& d,
                                        std::optional<long> tame_level = std::nullopt,
                                        std::optional<long> frob_order = std::nullopt);

struct ArchimedeanCharDatum {
  std::size_t rank = 0;
  IntMatrix sigma;
  std::vector<std::complex<double>> mu;
  std::vector<std::complex<double>> nu;
  std::vector<std::complex<double>> h;

  /// sigma^2 = 1, nu = sigma^T mu, mu - nu integral; throws AlgebraError("invalid-archimedean-datum").
  void check(double tol = 1e-9) const;
};

struct ArchimedeanReport {
  std::size_t samples = 0;
  double max_relative_deviation = 0.0;
  bool pass = false;
};

/// Compares chi(N(exp y)) from the character formula with exp(<mu, y> + <nu, conj y>).
ArchimedeanReport archimedean_norm_check(const ArchimedeanCharDatum& a,
                                         const std::vector<std::vector<std::complex<double>>>& samples,
                                         double tol = 1e-9);

/// Random valid datum: mu = c + u with c in the +1 eigenspace of sigma^T and u integral.
template <class Rng>
ArchimedeanCharDatum random_archimedean_datum(const IntMatrix& sigma, Rng& rng) {
  std::uniform_real_distribution<double> real(-2.0, 2.0);
  std::uniform_int_distribution<long> whole(-3, 3);
  const std::size_t r = sigma.rows();
  ArchimedeanCharDatum a;
  a.rank = r;
  a.sigma = sigma;
  std::vector<std::complex<double>> w(r);
  for (auto& x : w) x = {real(rng), real(rng)};
  a.mu.assign(r, 0.0);
  for (std::size_t i = 0; i < r; ++i) {
    std::complex<double> sw = 0.0;
    for (std::size_t j = 0; j < r; ++j) sw += sigma(j, i).get_d() * w[j];
    a.mu[i] = 0.5 * (w[i] + sw) + static_cast<double>(whole(rng));
  }
  a.nu.assign(r, 0.0);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) a.nu[i] += sigma(j, i).get_d() * a.mu[j];
  a.h.resize(r);
  for (auto& x : a.h) x = {real(rng), real(rng)};
  return a;
}

} // namespace torilang
