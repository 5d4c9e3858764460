#include "abelint/scenario.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include "abelint/csvio.hpp"
#include "abelint/equidist.hpp"
#include "abelint/parallel.hpp"
#include "abelint/segments.hpp"

namespace abelint {

using nlohmann::json;

std::string run_kind_name(RunKind k) {
    switch (k) {
        case RunKind::IntersectScan: return "intersect-scan";
        case RunKind::Density: return "density";
        case RunKind::Segments: return "segments";
        case RunKind::Equidist: return "equidist";
        case RunKind::TorsionDelta: return "torsion-delta";
        case RunKind::Census: return "census";
    }
    return "unknown";
}

RunKind run_kind_from_name(const std::string& name) {
    if (name == "intersect-scan") return RunKind::IntersectScan;
    if (name == "density") return RunKind::Density;
    if (name == "segments") return RunKind::Segments;
    if (name == "equidist") return RunKind::Equidist;
    if (name == "torsion-delta") return RunKind::TorsionDelta;
    if (name == "census") return RunKind::Census;
    throw ValidationError("unknown run kind \"" + name + "\"");
}

namespace {

Eigen::MatrixXcd parse_omega(const json& j) {
    if (!j.is_array() || j.empty()) throw ParseError("torus.omega must be a nonempty matrix");
    const int g = static_cast<int>(j.size());
    Eigen::MatrixXcd omega(g, g);
    for (int r = 0; r < g; ++r) {
        const auto& row = j.at(static_cast<std::size_t>(r));
        if (!row.is_array() || static_cast<int>(row.size()) != g)
            throw ParseError("torus.omega must be square");
        for (int c = 0; c < g; ++c) {
            const auto& cell = row.at(static_cast<std::size_t>(c));
            if (!cell.is_array() || cell.size() != 2)
                throw ParseError("torus.omega entries must be [re, im] pairs");
            omega(r, c) = std::complex<double>(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    return omega;
}

json omega_to_json(const Eigen::MatrixXcd& omega) {
    json out = json::array();
    for (int r = 0; r < omega.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < omega.cols(); ++c)
            row.push_back({omega(r, c).real(), omega(r, c).imag()});
        out.push_back(row);
    }
    return out;
}

ThetaDivisor parse_divisor(const json& j, int g) {
    ThetaDivisor d;
    d.chr = ThetaCharacteristic::zero(g);
    if (j.contains("alpha")) {
        const auto& a = j.at("alpha");
        if (static_cast<int>(a.size()) != g) throw ParseError("divisor alpha must have g entries");
        for (int i = 0; i < g; ++i)
            d.chr.alpha[static_cast<std::size_t>(i)] =
                Rational::parse(a.at(static_cast<std::size_t>(i)).get<std::string>()).mod1();
    }
    if (j.contains("beta")) {
        const auto& b = j.at("beta");
        if (static_cast<int>(b.size()) != g) throw ParseError("divisor beta must have g entries");
        for (int i = 0; i < g; ++i)
            d.chr.beta[static_cast<std::size_t>(i)] =
                Rational::parse(b.at(static_cast<std::size_t>(i)).get<std::string>()).mod1();
    }
    d.translate = Eigen::VectorXcd::Zero(g);
    if (j.contains("translate")) {
        const auto& t = j.at("translate");
        if (static_cast<int>(t.size()) != g)
            throw ParseError("divisor translate must have g entries");
        for (int i = 0; i < g; ++i) {
            const auto& cell = t.at(static_cast<std::size_t>(i));
            if (!cell.is_array() || cell.size() != 2)
                throw ParseError("divisor translate entries must be [re, im] pairs");
            d.translate[i] =
                std::complex<double>(cell.at(0).get<double>(), cell.at(1).get<double>());
        }
    }
    d.multiplier = j.value("multiplier", std::int64_t{1});
    if (d.multiplier == 0) throw ValidationError("divisor multiplier must be nonzero");
    return d;
}

json divisor_to_json(const ThetaDivisor& d) {
    json out;
    json alpha = json::array(), beta = json::array(), tr = json::array();
    for (const auto& a : d.chr.alpha) alpha.push_back(a.str());
    for (const auto& b : d.chr.beta) beta.push_back(b.str());
    for (int i = 0; i < d.translate.size(); ++i)
        tr.push_back({d.translate[i].real(), d.translate[i].imag()});
    out["alpha"] = alpha;
    out["beta"] = beta;
    out["translate"] = tr;
    out["multiplier"] = d.multiplier;
    return out;
}

std::vector<TorsionPoint> parse_torsion_list(const json& j, int twog, const std::string& what) {
    std::vector<TorsionPoint> out;
    for (const auto& entry : j) {
        if (static_cast<int>(entry.size()) != twog)
            throw ParseError(what + " entries must have 2g fraction strings");
        std::vector<Rational> coords;
        coords.reserve(entry.size());
        for (const auto& s : entry) coords.push_back(Rational::parse(s.get<std::string>()).mod1());
        out.emplace_back(std::move(coords));
    }
    return out;
}

json torsion_list_to_json(const std::vector<TorsionPoint>& pts) {
    json out = json::array();
    for (const auto& p : pts) {
        json row = json::array();
        for (const auto& c : p.coords()) row.push_back(c.str());
        out.push_back(row);
    }
    return out;
}

Eigen::VectorXd parse_point(const json& j, int twog, const std::string& what) {
    if (static_cast<int>(j.size()) != twog)
        throw ParseError(what + " must have 2g coordinates");
    Eigen::VectorXd v(twog);
    for (int i = 0; i < twog; ++i) v[i] = j.at(static_cast<std::size_t>(i)).get<double>();
    return frac_vector(v);
}

std::string iso_timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

Scenario parse_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file " + path.string());
    json config;
    try {
        config = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("scenario parse error: ") + e.what());
    }
    return parse_scenario_json(config);
}

Scenario parse_scenario_json(const json& config) {
    Scenario s;
    try {
        if (!config.contains("run")) throw ValidationError("scenario missing \"run\" kind");
        s.kind = run_kind_from_name(config.at("run").get<std::string>());
        if (!config.contains("torus") || !config.at("torus").contains("omega"))
            throw ValidationError("scenario missing torus.omega");
        s.omega = parse_omega(config.at("torus").at("omega"));
        s.simple = config.at("torus").value("simple", true);

        // validates symmetry / positivity up front
        AbelianTorus torus(s.omega, s.simple);
        const int g = torus.g();
        const int twog = 2 * g;

        if (config.contains("X")) s.X = parse_divisor(config.at("X"), g);
        if (config.contains("Y")) s.Y = parse_divisor(config.at("Y"), g);

        const json params = config.value("params", json::object());
        s.n_min = params.value("n_min", std::int64_t{1});
        s.n_max = params.value("n_max", std::int64_t{5});
        s.grid_res = params.value("grid_res", 128);
        s.tol = params.value("tol", 1e-10);
        s.eps = params.value("eps", 1e-8);
        s.seed = params.value("seed", std::uint64_t{42});
        s.threads = params.value("threads", 1);
        s.N = params.value("N", std::int64_t{10000});
        s.probe_count = params.value("probe_count", 200);
        if (params.contains("coverage_N"))
            s.coverage_checkpoints = params.at("coverage_N").get<std::vector<std::int64_t>>();
        s.segments_n = params.value("segments_n", std::int64_t{3});
        s.census_regime = params.value("census_regime", std::string("points"));

        if (params.contains("weyl_freqs")) {
            for (const auto& row : params.at("weyl_freqs")) {
                if (static_cast<int>(row.size()) != twog)
                    throw ParseError("weyl_freqs entries must have 2g integers");
                Eigen::VectorXi k(twog);
                for (int i = 0; i < twog; ++i) k[i] = row.at(static_cast<std::size_t>(i)).get<int>();
                s.weyl_freqs.push_back(k);
            }
        }
        if (params.contains("x")) s.point_x = parse_point(params.at("x"), twog, "params.x");
        if (params.contains("y")) s.point_y = parse_point(params.at("y"), twog, "params.y");
        if (params.contains("y_torsion"))
            s.y_torsion = parse_torsion_list(params.at("y_torsion"), twog, "y_torsion");
        if (params.contains("x_torsion"))
            s.x_torsion = parse_torsion_list(params.at("x_torsion"), twog, "x_torsion");
        if (params.contains("torsion_V"))
            s.torsion_V = parse_torsion_list(params.at("torsion_V"), twog, "torsion_V");

        s.out_dir = config.value("out", std::string("out"));

        // precondition checks, named
        if (!(s.tol > 0.0) || s.tol >= 1.0) throw ValidationError("params.tol must lie in (0,1)");
        if (!(s.eps > 0.0)) throw ValidationError("params.eps must be > 0");
        if (s.grid_res < 16) throw ValidationError("params.grid_res must be >= 16");
        if (s.threads < 1) throw ValidationError("params.threads must be >= 1");
        if (s.probe_count < 1) throw ValidationError("params.probe_count must be >= 1");
        if (s.N < 1) throw ValidationError("params.N must be >= 1");
        if (s.n_min > s.n_max) throw ValidationError("params.n_min must be <= n_max");
        if (s.segments_n == 0) throw ValidationError("params.segments_n must be nonzero");
        if (s.census_regime != "points" && s.census_regime != "divisors")
            throw ValidationError("params.census_regime must be \"points\" or \"divisors\"");

        switch (s.kind) {
            case RunKind::IntersectScan:
            case RunKind::Density:
                if (!s.X) throw ValidationError(run_kind_name(s.kind) + " requires divisor X");
                if (!s.Y) s.Y = s.X;
                if (g != 2) throw ValidationError("intersection solving requires g = 2");
                break;
            case RunKind::Equidist:
                if (!s.point_y) throw ValidationError("equidist requires params.y");
                if (!s.point_x) throw ValidationError("equidist requires params.x");
                if (s.weyl_freqs.empty()) {
                    for (int i = 0; i < twog; ++i) {
                        Eigen::VectorXi k = Eigen::VectorXi::Zero(twog);
                        k[i] = 1;
                        s.weyl_freqs.push_back(k);
                    }
                    Eigen::VectorXi k = Eigen::VectorXi::Ones(twog);
                    s.weyl_freqs.push_back(k);
                }
                break;
            case RunKind::Census:
                if (s.census_regime == "points") {
                    if (!s.point_x || !s.point_y)
                        throw ValidationError("point census requires params.x and params.y");
                } else {
                    if (!s.X) throw ValidationError("divisor census requires divisor X");
                    if (!s.Y) s.Y = s.X;
                    if (g != 2) throw ValidationError("divisor census requires g = 2");
                }
                break;
            case RunKind::TorsionDelta:
            case RunKind::Segments:
                break;
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("scenario field error: ") + e.what());
    }
    return s;
}

json Scenario::to_json() const {
    json j;
    j["run"] = run_kind_name(kind);
    j["torus"] = {{"omega", omega_to_json(omega)}, {"simple", simple}};
    if (X) j["X"] = divisor_to_json(*X);
    if (Y) j["Y"] = divisor_to_json(*Y);
    json p;
    p["n_min"] = n_min;
    p["n_max"] = n_max;
    p["grid_res"] = grid_res;
    p["tol"] = tol;
    p["eps"] = eps;
    p["seed"] = seed;
    // threads, like the output directory, is execution configuration:
    // results are identical for every thread count
    p["N"] = N;
    p["probe_count"] = probe_count;
    p["coverage_N"] = coverage_checkpoints;
    p["segments_n"] = segments_n;
    p["census_regime"] = census_regime;
    if (!weyl_freqs.empty()) {
        json f = json::array();
        for (const auto& k : weyl_freqs) {
            json row = json::array();
            for (int i = 0; i < k.size(); ++i) row.push_back(k[i]);
            f.push_back(row);
        }
        p["weyl_freqs"] = f;
    }
    auto point_json = [](const Eigen::VectorXd& v) {
        json row = json::array();
        for (int i = 0; i < v.size(); ++i) row.push_back(v[i]);
        return row;
    };
    if (point_x) p["x"] = point_json(*point_x);
    if (point_y) p["y"] = point_json(*point_y);
    if (!y_torsion.empty()) p["y_torsion"] = torsion_list_to_json(y_torsion);
    if (!x_torsion.empty()) p["x_torsion"] = torsion_list_to_json(x_torsion);
    if (!torsion_V.empty()) p["torsion_V"] = torsion_list_to_json(torsion_V);
    j["params"] = p;
    // the output directory is run placement, not scenario identity
    return j;
}

std::string Scenario::hash() const { return fnv1a_hex(to_json().dump()); }

namespace {

struct OutputSet {
    std::filesystem::path dir;
    std::vector<std::string> files;

    void write(const std::string& name, const std::string& content) {
        atomic_write_file(dir / name, content);
        files.push_back(name);
    }
    void write_json(const std::string& name, const json& j) { write(name, j.dump(2) + "\n"); }
};

json record_to_json(const AbelianTorus& torus, const IntersectionRecord& r) {
    json j;
    j["y"] = {r.y_coords[0], r.y_coords[1], r.y_coords[2], r.y_coords[3]};
    j["x"] = {r.x_coords[0], r.x_coords[1], r.x_coords[2], r.x_coords[3]};
    j["residual"] = r.residual;
    j["jacobian_min_sv"] = r.jacobian_min_sv;
    j["classification"] = r.classification == Classification::UnexpectedPositiveDim
                              ? "UnexpectedPositiveDim"
                              : "ExpectedIsolated";
    j["tangential"] = r.tangential;
    const auto seg = attribute_solution(TorusPoint(r.y_coords), r.n);
    json a = json::array();
    for (auto v : seg.a) a.push_back(v);
    j["segment_a"] = a;
    (void)torus;
    return j;
}

void run_intersect_scan(const Scenario& s, const AbelianTorus& torus, OutputSet& out, json& report) {
    SolveOptions opts;
    opts.grid_res = s.grid_res;
    opts.tol = s.tol;
    opts.threads = s.threads;
    ScanReport scan = properness_scan(torus, *s.X, *s.Y, s.n_min, s.n_max, opts, true);

    CsvBuilder csv({"n", "found", "expected", "proper"});
    json counts = json::array();
    json records = json::object();
    for (const auto& [n, c] : scan.counts_per_n) {
        const bool proper =
            std::find(scan.improper_n.begin(), scan.improper_n.end(), n) == scan.improper_n.end();
        csv.row({format_int(n), format_int(c.found), format_int(c.expected),
                 proper ? "true" : "false"});
        counts.push_back({{"n", n},
                          {"found", c.found},
                          {"x_distinct", c.x_distinct},
                          {"expected", c.expected},
                          {"proper", proper}});
        json recs = json::array();
        for (const auto& r : scan.records_per_n.at(n)) recs.push_back(record_to_json(torus, r));
        records[std::to_string(n)] = recs;
    }
    out.write("summary.csv", csv.str());
    report["counts"] = counts;
    report["improper_n"] = scan.improper_n;
    report["records"] = records;
    report["warnings"] = scan.warnings;
}

void run_density(const Scenario& s, const AbelianTorus& torus, OutputSet& out, json& report) {
    SolveOptions opts;
    opts.grid_res = s.grid_res;
    opts.tol = s.tol;
    opts.threads = s.threads;
    const ScanReport scan =
        density_scan(torus, *s.X, *s.Y, s.coverage_checkpoints, opts, s.probe_count, s.seed);

    CsvBuilder csv({"N", "coverage_radius"});
    for (const auto& [N, radius] : scan.coverage_radius_per_N) {
        csv.row({format_int(N), format_double(radius)});
        report["coverage"].push_back({{"N", N}, {"radius", radius}});
    }
    out.write("coverage.csv", csv.str());

    json per_n = json::array();
    for (const auto& [n, c] : scan.counts_per_n)
        per_n.push_back({{"n", n}, {"found", c.found}, {"expected", c.expected}});
    report["per_n"] = per_n;
    report["warnings"] = scan.warnings;
}

void run_segments(const Scenario& s, const AbelianTorus& torus, OutputSet& out, json& report) {
    const int g = torus.g();
    SegmentEnumerator en(s.segments_n, g);
    if (en.total_count() > 20000000)
        throw BudgetError("segments: " + std::to_string(en.total_count()) +
                          " descriptors exceed the materialization budget");
    std::vector<std::string> header{"n"};
    for (int i = 1; i <= 2 * g; ++i) header.push_back("a" + std::to_string(i));
    header.push_back("height");
    CsvBuilder csv(header);
    SegmentDescriptor d;
    std::int64_t count = 0, max_height = 0;
    while (en.next(d)) {
        std::vector<std::string> row{format_int(d.n)};
        for (auto v : d.a) row.push_back(format_int(v));
        row.push_back(format_int(d.height()));
        csv.row(row);
        ++count;
        max_height = std::max(max_height, d.height());
    }
    out.write("segments.csv", csv.str());
    CsvBuilder summary({"n", "count", "max_height"});
    summary.row({format_int(s.segments_n), format_int(count), format_int(max_height)});
    out.write("summary.csv", summary.str());
    report["count"] = count;
    report["max_height"] = max_height;
    if (s.segments_n >= 1) report["closed_form_count"] = segment_count(s.segments_n, g);
}

void run_equidist(const Scenario& s, const AbelianTorus& torus, OutputSet& out, json& report) {
    const TorusPoint y(*s.point_y), x(*s.point_x);
    std::vector<std::int64_t> checkpoints;
    for (std::int64_t c = 100; c < s.N; c *= 10) checkpoints.push_back(c);
    checkpoints.push_back(s.N);

    CsvBuilder weyl({"N", "k", "magnitude"});
    for (const auto& k : s.weyl_freqs) {
        for (auto cN : checkpoints) {
            std::vector<std::int64_t> ns(static_cast<std::size_t>(cN));
            for (std::int64_t i = 0; i < cN; ++i) ns[static_cast<std::size_t>(i)] = i + 1;
            const auto rep = weyl_sum(y, ns, k);
            std::string kf;
            for (int i = 0; i < k.size(); ++i) kf += (i ? ";" : "") + format_int(k[i]);
            weyl.row({format_int(rep.N), kf, format_double(rep.magnitude)});
        }
    }
    out.write("weyl.csv", weyl.str());

    CsvBuilder disc({"N", "discrepancy"});
    for (auto cN : checkpoints) {
        std::vector<TorusPoint> orbit;
        orbit.reserve(static_cast<std::size_t>(cN));
        Eigen::VectorXd ny = Eigen::VectorXd::Zero(y.dim2g());
        for (std::int64_t n = 1; n <= cN; ++n) {
            ny = frac_vector(ny + y.coords());
            orbit.emplace_back(ny);
        }
        const int grid = torus.g() == 1 ? 64 : (torus.g() == 2 ? 17 : 9);
        disc.row({format_int(cN), format_double(discrepancy_estimate(orbit, grid))});
    }
    out.write("discrepancy.csv", disc.str());

    const auto trace = approximating_translates(torus, y, x, s.N);
    std::vector<std::string> header{"n"};
    for (int i = 1; i <= y.dim2g(); ++i) header.push_back("a" + std::to_string(i));
    header.push_back("dist");
    CsvBuilder tr(header);
    for (const auto& st : trace.steps) {
        std::vector<std::string> row{format_int(st.n)};
        for (int i = 0; i < st.a.size(); ++i) row.push_back(format_int(st.a[i]));
        row.push_back(format_double(st.dist));
        tr.row(row);
    }
    out.write("trace.csv", tr.str());
    report["final_dist"] = trace.steps.empty() ? 1e99 : trace.steps.back().dist;
    report["trace_steps"] = trace.steps.size();
}

void run_torsion_delta(const Scenario& s, const AbelianTorus& torus, OutputSet& out, json& report) {
    (void)torus;
    const auto pairs = find_torsion_pairs(s.y_torsion, s.x_torsion);
    std::vector<CongruenceCondition> conditions;
    conditions.reserve(pairs.matches.size());
    json matches = json::array();
    for (const auto& m : pairs.matches) {
        conditions.push_back(m.condition);
        matches.push_back({{"y_index", m.y_index},
                           {"x_index", m.x_index},
                           {"e", m.condition.e},
                           {"k", m.condition.k}});
    }
    const auto density = density_of_union(conditions);

    CsvBuilder csv({"e", "k"});
    for (const auto& c : conditions) csv.row({format_int(c.e), format_int(c.k)});
    out.write("conditions.csv", csv.str());

    report["matches"] = matches;
    report["delta"] = density.delta.str();
    report["delta_decimal"] = density.delta.to_double();
    report["bad_set_modulus"] = density.bad_set_modulus;
    report["V"] = torsion_list_to_json(pairs.exceptional_set);
}

void run_census(const Scenario& s, const AbelianTorus& torus, OutputSet& out, json& report) {
    std::vector<std::pair<std::int64_t, std::int64_t>> rows;
    if (s.census_regime == "points") {
        std::vector<TorusPoint> V;
        V.reserve(s.torsion_V.size());
        for (const auto& t : s.torsion_V) V.push_back(t.to_torus_point());
        const auto census =
            bad_n_census_points(torus, TorusPoint(*s.point_x), TorusPoint(*s.point_y), s.N, s.eps, V);
        for (const auto& [n, c] : census) rows.emplace_back(n, c);
    } else {
        std::vector<TorusPoint> V;
        for (const auto& t : s.torsion_V) V.push_back(t.to_torus_point());
        SolveOptions opts;
        opts.grid_res = s.grid_res;
        opts.tol = s.tol;
        opts.threads = s.threads;
        const auto census = bad_n_census(torus, *s.X, *s.Y, s.N, s.eps, V, opts);
        for (const auto& r : census) rows.emplace_back(r.n, r.count);
    }
    CsvBuilder csv({"n", "bad_count"});
    std::int64_t total = 0;
    for (const auto& [n, c] : rows) {
        csv.row({format_int(n), format_int(c)});
        total += c;
    }
    out.write("census.csv", csv.str());
    report["regime"] = s.census_regime;
    report["total_bad"] = total;
    // observed growth exponent; the asymptotic statement is O(n^eps)
    report["fitted_exponent"] =
        total > 0 ? std::log(static_cast<double>(total)) / std::log(static_cast<double>(s.N)) : 0.0;
}

} // namespace

RunManifest run(const Scenario& s) {
    AbelianTorus torus(s.omega, s.simple);
    set_default_thread_count(s.threads);

    OutputSet out;
    out.dir = s.out_dir;
    std::filesystem::create_directories(out.dir);

    json report;
    report["kind"] = run_kind_name(s.kind);
    report["scenario"] = s.to_json();
    report["tool_version"] = kToolVersion;
    report["torus_conditioning"] = {{"im_eig_min", torus.im_eig_min()},
                                    {"im_eig_max", torus.im_eig_max()},
                                    {"well_conditioned", torus.well_conditioned()}};
    report["tolerances"] = {{"tol", s.tol}, {"eps", s.eps}, {"grid_res", s.grid_res}};

    switch (s.kind) {
        case RunKind::IntersectScan: run_intersect_scan(s, torus, out, report); break;
        case RunKind::Density: run_density(s, torus, out, report); break;
        case RunKind::Segments: run_segments(s, torus, out, report); break;
        case RunKind::Equidist: run_equidist(s, torus, out, report); break;
        case RunKind::TorsionDelta: run_torsion_delta(s, torus, out, report); break;
        case RunKind::Census: run_census(s, torus, out, report); break;
    }
    out.write_json("report.json", report);

    RunManifest manifest;
    manifest.scenario_hash = s.hash();
    manifest.version = kToolVersion;
    manifest.created = iso_timestamp_utc();
    manifest.tolerances = report["tolerances"];
    manifest.files = out.files;
    json mj;
    mj["scenario_hash"] = manifest.scenario_hash;
    mj["version"] = manifest.version;
    mj["created"] = manifest.created;
    mj["tolerances"] = manifest.tolerances;
    mj["files"] = manifest.files;
    atomic_write_file(out.dir / "manifest.json", mj.dump(2) + "\n");
    return manifest;
}

} // namespace abelint
