#pragma once

#include "htype/algebra.hpp"
#include "htype/clifford.hpp"
#include "htype/glz.hpp"
#include "htype/waves.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace htype::cli {

using json = nlohmann::json;

/// Bad config file or flag; carries the field path and, for YAML input, the line.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct GroupSpec {
    std::optional<EndomorphismSpace> space;  // {l, a, b}
    std::string generator_file;              // alternative: explicit skew generators
    std::vector<Eigen::MatrixXd> generators;

    Algebra algebra() const;
    std::string label() const;
    json to_json() const;
};

/// One radial stratum.  With `s` set, mu comes from the Z-ball eigenvalue lambda_i^(s).
struct Stratum {
    int n = 0;
    int m = 0;
    std::optional<int> s;
    int i = 1;
};

struct SpectrumConfig {
    std::string mode = "explicit";  // explicit | compact
    double mu = 1.0;
    std::optional<int> k;           // defaults to the group's k
    int rmax = 3;
    int pmax = 2;
    double R = 1.0;                 // X-ball radius; t runs over [0, R^2]
    BoundaryCondition bc = BoundaryCondition::dirichlet();
    int count = 8;
    int nodes = 400;
    std::vector<Stratum> strata{{}};
    double zball_radius = 1.0;
    json to_json() const;
};

struct IsospecConfig {
    EndomorphismSpace left{3, 2, 0};
    EndomorphismSpace right{3, 1, 1};
    double mu = 1.0;
    double R = 3.0;
    int count = 6;
    int nodes = 200;
    int nmax = 2;
    std::vector<BoundaryCondition> bcs{BoundaryCondition::dirichlet(), BoundaryCondition::neumann()};
    json to_json() const;
};

struct WavesConfig {
    PhysicalConstants pc{1.0, 1.0, 1.0};
    double q = 1.0;
    std::vector<OperatorKind> kinds;  // empty means all
    int p = 1;                        // pole exponents of the packet transform
    int q_exp = 0;
    double radius = 1.5;              // sphere-bundle radius |K|
    int grid_n = 2;
    double grid_half = 1.0;
    int grid_nT = 3;
    double T0 = -0.5;
    double T1 = 0.5;
    json to_json() const;
};

struct VerifyConfig {
    std::vector<std::string> suites;  // empty means all
    double perturbation = 0.0;        // > 0 injects a curated failure
};

struct RunConfig {
    std::string source;  // file name, empty for defaults
    GroupSpec group;
    SpectrumConfig spectrum;
    IsospecConfig isospec;
    WavesConfig waves;
    VerifyConfig verify;
    std::vector<std::string> report_commands{"build-group", "spectrum", "curvature", "isospec", "waves"};
    std::map<std::string, double> tolerances{{"default", 1e-6}, {"boundary", 1e-8}};
    std::string out = "htype-out";
    int jobs = 1;
    std::uint64_t seed = 1;
    std::vector<std::string> only;  // --only: verify suites or report commands

    double tol(const std::string& name) const;
};

/// Reads YAML (or JSON by extension / leading brace).  Unknown keys and bad values throw
/// ConfigError naming the field.  An empty path yields the defaults.
RunConfig load_config(const std::string& path);

/// Flag and environment overrides: flags beat HTYPE_OUT / HTYPE_JOBS, which beat the file.
struct Overrides {
    std::optional<std::string> out;
    std::optional<int> jobs;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::vector<std::string> only;
    std::optional<double> perturbation;
};
void apply_overrides(RunConfig& cfg, const Overrides& o);

std::string to_string(const BoundaryCondition& bc);
std::optional<OperatorKind> parse_operator_kind(const std::string& name);
const std::vector<OperatorKind>& all_operator_kinds();

}  // namespace htype::cli
