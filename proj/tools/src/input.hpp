#pragma once

#include "torilang/langlands.hpp"

#include <nlohmann/json.hpp>

#include <complex>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace torilang::cli {

using Json = nlohmann::json;

/// One schema or invariant violation, located by a JSON pointer into the input.
struct InputIssue {
  std::string violation;
  std::string location;
  std::string detail;
};

/// Thrown for invalid input; carries every issue found.
class InputError : public std::runtime_error {
public:
  explicit InputError(std::vector<InputIssue> issues);
  InputError(std::string violation, std::string location, std::string detail)
      : InputError(std::vector<InputIssue>{{std::move(violation), std::move(location), std::move(detail)}}) {}
  const std::vector<InputIssue>& issues() const { return issues_; }

private:
  std::vector<InputIssue> issues_;
};

/// A parsed and validated input document. Sections are optional; commands
/// ask for the ones they need through the require_* accessors.
struct InputDocument {
  Json source;  // the document as given, for echoing
  std::optional<FiniteGroup> group;
  std::map<std::string, Subgroup> subgroups;
  std::optional<LocalGaloisDatum> local_datum;
  std::optional<GammaModule> module;
  std::optional<RootDatumGamma> root_datum;
  std::optional<ArchimedeanCharDatum> archimedean;
  std::vector<std::vector<std::complex<double>>> archimedean_samples;
  Json params = Json::object();

  const FiniteGroup& require_group() const;
  const LocalGaloisDatum& require_local_datum() const;
  const GammaModule& require_module() const;
  const RootDatumGamma& require_root_datum() const;
  const ArchimedeanCharDatum& require_archimedean() const;

  /// Resolves a subgroup reference from params: a declared name, "G", "1" or an index list.
  Subgroup subgroup_param(const std::string& key) const;
  std::optional<long> int_param(const std::string& key) const;
  std::optional<std::string> string_param(const std::string& key) const;
};

/// Parses and validates a document; throws InputError listing every violation.
InputDocument parse_input(const std::string& text);

} // namespace torilang::cli
