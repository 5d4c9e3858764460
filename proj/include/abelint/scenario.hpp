#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "abelint/density.hpp"
#include "abelint/divisor.hpp"
#include "abelint/intersection.hpp"
#include "abelint/torus.hpp"

namespace abelint {

inline constexpr const char* kToolVersion = "0.1.0";

enum class RunKind { IntersectScan, Density, Segments, Equidist, TorsionDelta, Census };

std::string run_kind_name(RunKind k);
RunKind run_kind_from_name(const std::string& name);

// Fully validated scenario with every default materialized. One config file
// = one scenario = one output directory.
struct Scenario {
    RunKind kind = RunKind::Segments;
    Eigen::MatrixXcd omega;
    bool simple = true;
    std::optional<ThetaDivisor> X, Y;

    std::int64_t n_min = 1, n_max = 5;   // intersect-scan range
    int grid_res = 128;
    double tol = 1e-10;
    double eps = 1e-8;
    std::uint64_t seed = 42;
    int threads = 1;

    std::int64_t N = 10000;              // census / equidist horizon
    int probe_count = 200;               // density probes
    std::vector<std::int64_t> coverage_checkpoints{5, 10, 20};
    std::int64_t segments_n = 3;

    std::vector<Eigen::VectorXi> weyl_freqs;
    std::optional<Eigen::VectorXd> point_x, point_y; // equidist / point census

    std::vector<TorsionPoint> y_torsion, x_torsion;  // torsion-delta inputs
    std::vector<TorsionPoint> torsion_V;
    std::string census_regime = "points";            // "points" | "divisors"

    std::string out_dir = "out";

    nlohmann::json to_json() const;     // canonical form (defaults included)
    std::string hash() const;           // FNV-1a of the canonical form
};

struct RunManifest {
    std::string scenario_hash;
    std::string version;
    std::string created;                 // ISO 8601 UTC; only the manifest carries time
    nlohmann::json tolerances;
    std::vector<std::string> files;      // data files written, relative to out_dir
};

// Throws ParseError (malformed file) or ValidationError (violated
// precondition, named in the message).
Scenario parse_scenario(const std::filesystem::path& path);
Scenario parse_scenario_json(const nlohmann::json& config);

// Dispatches to the module pipeline, writes CSV/JSON reports plus
// manifest.json into the scenario's output directory (atomically).
RunManifest run(const Scenario& scenario);

} // namespace abelint
