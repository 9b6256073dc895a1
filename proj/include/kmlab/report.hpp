#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmlab/families.hpp"
#include "kmlab/identities.hpp"
#include "json.hpp"

namespace kmlab {

/// Malformed input document, parameter list or grid spec.  `location` is a
/// JSON-pointer-like path ("/metric/1/2") or the offending flag.
class input_error : public std::runtime_error {
 public:
  input_error(std::string location, const std::string& message);
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

/// Either a named family with parameters or a raw algebra plus structure.
struct InputDocument {
  std::optional<FamilySpec> family;
  std::optional<StructureTensors> raw;
};

/// Accepts {"family": name, "params": {...}} or the raw layout
/// {frame_kind, metric, brackets: [[i, j, [c0, c1, c2]], ...], phi, xi, eta, epsilon}.
/// Numbers may be JSON integers or "p/q" strings; Float mode also takes decimals.
InputDocument parse_input(const nlohmann::json& doc, Mode mode);
InputDocument parse_input_text(const std::string& text, Mode mode);

/// "k=1,lambda=2,c=0" -> map.  Throws input_error.
std::map<std::string, Scalar> parse_params(const std::string& text, Mode mode);

/// Canonical echo of the input (all numbers as canonical strings).
nlohmann::json echo_input(const InputDocument& in);

/// Builds the family or validates the raw structure.  Throws validation_error.
StructureTensors materialize(const InputDocument& in);

struct ClassSection {
  std::string tag;
  std::string display;
  bool normal = false;
  std::string u;
  std::string f;
  std::string residual;
  bool operator==(const ClassSection&) const = default;
};

struct KappaMuSection {
  std::optional<std::string> kappa;
  std::optional<std::string> mu;
  std::string nullity_kind;
  int h_rank = 0;
  std::string residual;
  std::string pattern_residual;
  std::string note;
  bool operator==(const KappaMuSection&) const = default;
};

struct InvariantSection {
  std::string kind;
  bool defined = false;
  std::optional<std::string> value;
  std::optional<std::string> value_squared;
  std::string reason;
  bool operator==(const InvariantSection&) const = default;
};

struct GroupSection {
  std::string name;
  int table = 0;
  std::string range;
  std::string description;
  std::string row;
  std::string reason;
  bool operator==(const GroupSection&) const = default;
};

struct CurvatureSection {
  std::vector<std::vector<std::string>> ricci;
  std::optional<std::vector<std::string>> principal;  ///< when Ric is diagonal in the input frame
  std::string scalar;
  std::optional<std::string> distribution_curvature;  ///< K_D on Artin frames
  bool operator==(const CurvatureSection&) const = default;
};

struct IdentitySection {
  std::string id;
  std::string status;
  std::optional<std::string> residual;
  std::string reason;
  bool operator==(const IdentitySection&) const = default;
};

struct MilnorSection {
  std::vector<std::string> lambda;
  std::vector<std::string> mu;
  std::vector<std::string> ricci;
  std::vector<int> signs;
  std::string bracket_residual;
  std::string ricci_residual;
  bool operator==(const MilnorSection&) const = default;
};

struct Report {
  std::string schema = "v1";
  nlohmann::json input;
  std::string mode;
  std::optional<std::string> dhomothety;
  ClassSection structure_class;
  KappaMuSection kappa_mu;
  std::vector<InvariantSection> invariants;
  GroupSection group;
  CurvatureSection curvature;
  std::vector<IdentitySection> identities;
  std::optional<MilnorSection> milnor;

  bool operator==(const Report& o) const;
};

struct ReportOptions {
  Mode mode = Mode::Exact;
  std::vector<IdentityId> identities = all_identities();
  std::optional<Scalar> dhomothety;
};

/// Runs the whole pipeline.  Throws validation_error / std::invalid_argument
/// for invalid structures and deformation parameters.
Report make_report(const InputDocument& in, const ReportOptions& opt);

nlohmann::json report_to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
/// Sorted keys, two-space indent, trailing newline.
std::string dump_canonical(const nlohmann::json& j);
std::string report_to_text(const Report& r);

/// One evaluated grid point of a family sweep.
struct SweepRow {
  std::map<std::string, std::string> params;
  bool valid = false;
  std::string error;
  std::string structure_class;
  std::optional<std::string> kappa;
  std::optional<std::string> mu;
  std::string invariant;
  GroupClass group;
  std::string row;
};

/// Grid spec "k=-3..3;lambda=0|1/2|2;c=*".  Values are separated by '|',
/// "a..b" is an inclusive integer range and "*" the default grid
/// {-3..3, +-1/2, +-3/2}.  Parameters absent from the spec come from `fixed`
/// or, failing that, the default grid.  Points violating the family
/// constraints are reported with valid = false.
std::vector<SweepRow> run_sweep(const std::string& family, const std::string& grid_spec,
                                const std::map<std::string, Scalar>& fixed, Mode mode);

nlohmann::json sweep_to_json(const std::string& family, const std::vector<SweepRow>& rows);
std::string sweep_to_text(const std::vector<SweepRow>& rows);

}  // namespace kmlab
