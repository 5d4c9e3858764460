#include "abelint/intersection.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "abelint/parallel.hpp"
#include "abelint/rng.hpp"

namespace abelint {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kDedupDistance = 1e-6;
constexpr double kRankDeficientSV = 1e-6;
// At a tangential root the set {both residuals <= tol} is a sliver of length
// ~sqrt(tol/curvature) along the common tangent; converged points scatter
// across it, with min_sv growing linearly away from the center. Near-singular
// roots are merged at this radius so a tangency is counted once (still far
// below the inter-root spacing of the scans; transverse roots sit at
// min_sv = O(1)).
constexpr double kTangentialMergeRadius = 2e-3;
constexpr double kTangentialMergeSV = 1e-2;
constexpr double kProbeStep = 1e-3;
constexpr int kProbeSteps = 10;
constexpr double kScreenFactor = 3.0; // threshold = factor * mean adjacent difference

std::optional<int> g_expected_dimension(int dimX, int dimY, int dimA) {
    const int d = dimX + dimY - dimA;
    if (d < 0) return std::nullopt;
    return d;
}

// ---------------------------------------------------------------------------
// Slab screening. For fixed tail coordinates (a3, a4) = (j3, j4)/R the map
// a_head -> theta[chr](P(mu*a + c)) is a trigonometric sum with integer head
// frequencies mu*m, so one inverse FFT evaluates the whole (a1, a2) slab
// exactly (up to series truncation). Magnitudes come out at the tail-reduced
// argument: unit scale, directly comparable across slabs.
// ---------------------------------------------------------------------------

struct SlabFFT {
    int R = 0;
    fftw_complex* buf = nullptr;
    fftw_plan plan{};

    static std::mutex& plan_mutex() {
        static std::mutex m;
        return m;
    }

    explicit SlabFFT(int res) : R(res) {
        std::lock_guard<std::mutex> lock(plan_mutex());
        buf = fftw_alloc_complex(static_cast<std::size_t>(R) * R);
        plan = fftw_plan_dft_2d(R, R, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~SlabFFT() {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
        fftw_free(buf);
    }
    SlabFFT(const SlabFFT&) = delete;
    SlabFFT& operator=(const SlabFFT&) = delete;
};

// |theta| over one head slab; writes R*R values into `mag`.
void slab_magnitudes(const ThetaSeries& series, std::int64_t mu, const Eigen::VectorXd& c_coords,
                     int j3, int j4, SlabFFT& fft, std::vector<double>& mag) {
    const int R = fft.R;
    const AbelianTorus& T = series.torus();
    const int g = T.g();
    const std::complex<double> I(0, 1);

    Eigen::VectorXd t_raw(g);
    t_raw[0] = static_cast<double>(mu) * j3 / R + c_coords[g + 0];
    t_raw[1] = static_cast<double>(mu) * j4 / R + c_coords[g + 1];
    Eigen::VectorXd t_red(g);
    for (int i = 0; i < g; ++i) {
        t_red[i] = t_raw[i] - std::floor(t_raw[i]);
        if (t_red[i] >= 1.0) t_red[i] = 0.0;
    }

    // constant part of the series argument: c_head + beta + omega * t_red
    Eigen::VectorXcd zc = c_coords.head(g).cast<std::complex<double>>() +
                          series.beta_real().cast<std::complex<double>>() +
                          T.omega() * t_red.cast<std::complex<double>>();

    std::fill(reinterpret_cast<std::complex<double>*>(fft.buf),
              reinterpret_cast<std::complex<double>*>(fft.buf) + static_cast<std::size_t>(R) * R,
              std::complex<double>(0, 0));
    auto* A = reinterpret_cast<std::complex<double>*>(fft.buf);
    for (const auto& term : series.terms()) {
        std::complex<double> dot(0, 0);
        for (int i = 0; i < g; ++i) dot += term.m_plus_alpha[i] * zc[i];
        const std::complex<double> coef = std::exp(term.quad_phase + I * kTwoPi * dot);
        const std::int64_t f1 = ((mu * term.m[0]) % R + R) % R;
        const std::int64_t f2 = ((mu * term.m[1]) % R + R) % R;
        A[f1 * R + f2] += coef;
    }
    fftw_execute(fft.plan);
    mag.resize(static_cast<std::size_t>(R) * R);
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(A[i]);
}

// Screening threshold for one slab: wide enough that any node within about
// one cell of the zero set passes. The mean adjacent difference sets the
// typical gradient scale; the max adjacent difference bounds the local one.
double slab_threshold(const std::vector<double>& mag, int R) {
    double acc = 0.0, peak = 0.0;
    for (int a = 0; a < R; ++a) {
        const int a1 = (a + 1) % R;
        for (int b = 0; b < R; ++b) {
            const int b1 = (b + 1) % R;
            const double dh = std::abs(mag[a * R + b1] - mag[a * R + b]);
            const double dv = std::abs(mag[a1 * R + b] - mag[a * R + b]);
            acc += dh + dv;
            peak = std::max(peak, std::max(dh, dv));
        }
    }
    return std::max(kScreenFactor * acc / (2.0 * R * R), 2.0 * peak) + 1e-14;
}

// ---------------------------------------------------------------------------
// Newton on the two-equation system.
// ---------------------------------------------------------------------------

struct SystemEval {
    std::complex<double> f1, f2;
    Eigen::Matrix2cd J;
    double residual;
};

struct GraphSystem {
    const AbelianTorus& torus;
    const DivisorEvaluator& evY;
    const DivisorEvaluator& evX;
    std::int64_t n;

    SystemEval eval(const Eigen::Vector2cd& z, bool want_grad) const {
        SystemEval out;
        const auto ny = evY.normalized(z, want_grad);
        const Eigen::Vector2cd zx = static_cast<double>(n) * z;
        const auto nx = evX.normalized(zx, want_grad);
        out.f1 = ny.value;
        out.f2 = nx.value;
        if (want_grad) {
            out.J.row(0) = ny.gradient_z.transpose();
            out.J.row(1) = static_cast<double>(n) * nx.gradient_z.transpose();
        }
        out.residual = std::max(std::abs(out.f1), std::abs(out.f2));
        return out;
    }
};

// Least-squares Newton step through the SVD pseudo-inverse; rank-deficient
// systems fall back to Gauss-Newton onto the solution set.
Eigen::Vector2cd pinv_step(const Eigen::Matrix2cd& J, const Eigen::Vector2cd& F,
                           double* min_sv = nullptr) {
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(J, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    if (min_sv) *min_sv = sv(1);
    const double cutoff = std::max(sv(0) * 1e-13, 1e-300);
    Eigen::Vector2cd w = svd.matrixU().adjoint() * F;
    Eigen::Vector2cd y;
    for (int i = 0; i < 2; ++i) y[i] = sv(i) > cutoff ? w[i] / sv(i) : std::complex<double>(0, 0);
    return -(svd.matrixV() * y);
}

bool newton_polish(const GraphSystem& sys, Eigen::Vector2cd& z, double tol) {
    SystemEval e = sys.eval(z, true);
    for (int it = 0; it < 40; ++it) {
        if (e.residual <= tol) return true;
        Eigen::Vector2cd F(e.f1, e.f2);
        Eigen::Vector2cd step = pinv_step(e.J, F);
        const double slen = step.norm();
        if (!(slen > 0) || !std::isfinite(slen)) return false;
        if (slen > 0.35) step *= 0.35 / slen;
        double scale = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 7; ++bt) {
            const Eigen::Vector2cd zn = z + scale * step;
            SystemEval en = sys.eval(zn, true);
            if (en.residual < e.residual) {
                z = zn;
                e = en;
                moved = true;
                break;
            }
            scale *= 0.5;
        }
        if (!moved) return e.residual <= tol;
    }
    return e.residual <= tol;
}

std::uint64_t cell_key(const std::array<std::int64_t, 4>& c) {
    std::uint64_t h = 1469598103934665603ull;
    for (auto v : c) {
        h ^= static_cast<std::uint64_t>(v);
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

namespace detail {

std::vector<float> screen_grid(const AbelianTorus& torus, const ThetaDivisor& D, std::int64_t mu,
                               int R, double tol) {
    if (torus.g() != 2) throw ValidationError("screen_grid: g = 2 only");
    DivisorEvaluator ev(torus, D, tol);
    const Eigen::VectorXd c = torus.coords_of(D.translate);
    SlabFFT fft(R);
    std::vector<double> mag;
    std::vector<float> grid(static_cast<std::size_t>(R) * R * R * R);
    for (int j3 = 0; j3 < R; ++j3)
        for (int j4 = 0; j4 < R; ++j4) {
            slab_magnitudes(ev.series(), mu, c, j3, j4, fft, mag);
            for (int a = 0; a < R; ++a)
                for (int b = 0; b < R; ++b) {
                    const std::size_t idx =
                        ((static_cast<std::size_t>(a) * R + b) * R + j3) * R + j4;
                    grid[idx] = static_cast<float>(mag[static_cast<std::size_t>(a) * R + b]);
                }
        }
    return grid;
}

} // namespace detail

std::optional<int> expected_dimension(int dimX, int dimY, int dimA) {
    if (dimX < 0 || dimY < 0 || dimX > dimA || dimY > dimA)
        throw ValidationError("expected_dimension: need 0 <= dimX, dimY <= dimA");
    return g_expected_dimension(dimX, dimY, dimA);
}

std::int64_t expected_count(const ThetaDivisor& X, const ThetaDivisor& Y, std::int64_t n) {
    if (n == 0) throw ValidationError("expected_count: n must be nonzero");
    const std::int64_t mx = X.multiplier, my = Y.multiplier;
    return 2 * n * n * mx * mx * my * my;
}

std::vector<int> dedup_torus_points(const AbelianTorus& torus,
                                    const std::vector<Eigen::VectorXd>& coords, double eps) {
    const double cellw = 2 * eps;
    const std::int64_t ncells = std::max<std::int64_t>(1, static_cast<std::int64_t>(1.0 / cellw));
    std::unordered_map<std::uint64_t, std::vector<int>> buckets;
    std::vector<int> kept;
    auto cell_of = [&](const Eigen::VectorXd& v) {
        std::array<std::int64_t, 4> c{0, 0, 0, 0};
        for (int i = 0; i < v.size() && i < 4; ++i)
            c[static_cast<std::size_t>(i)] =
                static_cast<std::int64_t>(std::floor(v[i] / cellw)) % ncells;
        return c;
    };
    for (int idx = 0; idx < static_cast<int>(coords.size()); ++idx) {
        const auto c = cell_of(coords[idx]);
        bool dup = false;
        const int dims = std::min<int>(4, static_cast<int>(coords[idx].size()));
        std::array<std::int64_t, 4> probe = c;
        std::function<void(int)> visit = [&](int d) {
            if (dup) return;
            if (d == dims) {
                auto it = buckets.find(cell_key(probe));
                if (it == buckets.end()) return;
                for (int k : it->second)
                    if (torus_distance(torus, coords[static_cast<std::size_t>(k)],
                                       coords[static_cast<std::size_t>(idx)]) <= eps) {
                        dup = true;
                        return;
                    }
                return;
            }
            for (int delta = -1; delta <= 1; ++delta) {
                probe[static_cast<std::size_t>(d)] =
                    ((c[static_cast<std::size_t>(d)] + delta) % ncells + ncells) % ncells;
                visit(d + 1);
            }
            probe[static_cast<std::size_t>(d)] = c[static_cast<std::size_t>(d)];
        };
        visit(0);
        if (!dup) {
            buckets[cell_key(c)].push_back(idx);
            kept.push_back(idx);
        }
    }
    return kept;
}

std::vector<IntersectionRecord> solve_graph_system(const AbelianTorus& torus,
                                                   const ThetaDivisor& Y, const ThetaDivisor& X,
                                                   std::int64_t n, const SolveOptions& opts,
                                                   std::vector<std::string>* warnings) {
    if (torus.g() != 2) throw ValidationError("solve_graph_system: implemented for g = 2");
    if (n == 0) throw ValidationError("solve_graph_system: n must be nonzero");
    if (opts.grid_res < 16) throw ValidationError("solve_graph_system: grid_res must be >= 16");
    if (!(opts.tol > 0) || opts.tol >= 1)
        throw TolOutOfRangeError("solve_graph_system: tol must lie in (0,1)");

    const std::int64_t muY = Y.multiplier;
    const std::int64_t muX = X.multiplier * n;

    // Pulled-back divisors oscillate at frequency ~|n|: scale the grid past
    // |n| = 5 and keep it above the fold frequency.
    std::int64_t R = opts.grid_res;
    if (std::llabs(n) > 5) R = (opts.grid_res * std::llabs(n) + 4) / 5;
    R = std::max<std::int64_t>(R, 4 * std::max(std::llabs(muX), std::llabs(muY)) + 1);
    const int Ri = static_cast<int>(R);

    DivisorEvaluator evY(torus, Y, opts.tol);
    DivisorEvaluator evX(torus, X, opts.tol);
    const Eigen::VectorXd cY = torus.coords_of(Y.translate);
    const Eigen::VectorXd cX = torus.coords_of(X.translate);

    // Screening pass: per-slab FFT magnitudes for both equations, candidates
    // where both are below their adaptive thresholds and locally minimal.
    const std::int64_t slabs = R * R;
    std::vector<std::vector<std::array<int, 4>>> slab_candidates(static_cast<std::size_t>(slabs));

    parallel_for(slabs, [&](std::int64_t s) {
        thread_local std::unique_ptr<SlabFFT> fft;
        if (!fft || fft->R != Ri) fft = std::make_unique<SlabFFT>(Ri);
        thread_local std::vector<double> magY, magX;

        const int j3 = static_cast<int>(s / R);
        const int j4 = static_cast<int>(s % R);
        slab_magnitudes(evY.series(), muY, cY, j3, j4, *fft, magY);
        slab_magnitudes(evX.series(), muX, cX, j3, j4, *fft, magX);
        const double tauY = slab_threshold(magY, Ri);
        const double tauX = slab_threshold(magX, Ri);

        auto& cands = slab_candidates[static_cast<std::size_t>(s)];
        for (int a = 0; a < Ri; ++a) {
            for (int b = 0; b < Ri; ++b) {
                const double sy = magY[a * static_cast<std::size_t>(Ri) + b];
                const double sx = magX[a * static_cast<std::size_t>(Ri) + b];
                if (sy > tauY || sx > tauX) continue;
                const double score = std::max(sy / tauY, sx / tauX);
                bool ismin = true;
                for (int da = -1; da <= 1 && ismin; ++da)
                    for (int db = -1; db <= 1; ++db) {
                        if (da == 0 && db == 0) continue;
                        const int aa = (a + da + Ri) % Ri;
                        const int bb = (b + db + Ri) % Ri;
                        const double ns =
                            std::max(magY[aa * static_cast<std::size_t>(Ri) + bb] / tauY,
                                     magX[aa * static_cast<std::size_t>(Ri) + bb] / tauX);
                        if (ns < score) { ismin = false; break; }
                    }
                if (ismin) cands.push_back({a, b, j3, j4});
            }
        }
    }, opts.threads);

    std::vector<std::array<int, 4>> candidates;
    for (auto& sc : slab_candidates)
        candidates.insert(candidates.end(), sc.begin(), sc.end());

    // Newton polish from every candidate node.
    GraphSystem sys{torus, evY, evX, n};
    std::vector<char> converged(candidates.size(), 0);
    std::vector<Eigen::VectorXd> roots(candidates.size());
    parallel_for(static_cast<std::int64_t>(candidates.size()), [&](std::int64_t i) {
        const auto& c = candidates[static_cast<std::size_t>(i)];
        Eigen::VectorXd a(4);
        a << static_cast<double>(c[0]) / Ri, static_cast<double>(c[1]) / Ri,
            static_cast<double>(c[2]) / Ri, static_cast<double>(c[3]) / Ri;
        Eigen::Vector2cd z = torus.lift(a);
        if (!newton_polish(sys, z, opts.tol)) return;
        roots[static_cast<std::size_t>(i)] = frac_vector(torus.coords_of(z));
        converged[static_cast<std::size_t>(i)] = 1;
    }, opts.threads);

    std::vector<Eigen::VectorXd> ycands;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (converged[i]) ycands.push_back(roots[i]);

    // Lexicographic order, then dedup (keeps the lexicographically first
    // representative of each cluster).
    std::sort(ycands.begin(), ycands.end(), [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
        return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                            b.data() + b.size());
    });
    const std::vector<int> kept = dedup_torus_points(torus, ycands, kDedupDistance);

    std::vector<IntersectionRecord> records(kept.size());
    parallel_for(static_cast<std::int64_t>(kept.size()), [&](std::int64_t i) {
        const Eigen::VectorXd& y = ycands[static_cast<std::size_t>(kept[static_cast<std::size_t>(i)])];
        const Eigen::Vector2cd z = torus.lift(y);
        SystemEval e = sys.eval(z, true);
        IntersectionRecord rec;
        rec.y_coords = y;
        rec.x_coords = frac_vector(static_cast<double>(n) * y);
        rec.residual = e.residual;
        rec.n = n;
        Eigen::JacobiSVD<Eigen::Matrix2cd> svd(e.J);
        rec.jacobian_min_sv = svd.singularValues()(1);
        records[static_cast<std::size_t>(i)] = std::move(rec);
    }, opts.threads);

    // Collapse rank-deficient roots: each tangency keeps one representative
    // (smallest residual, lexicographic tie-break).
    {
        std::vector<int> deficient, full_rank;
        for (int i = 0; i < static_cast<int>(records.size()); ++i) {
            if (records[static_cast<std::size_t>(i)].jacobian_min_sv < kTangentialMergeSV)
                deficient.push_back(i);
            else
                full_rank.push_back(i);
        }
        if (!deficient.empty()) {
            std::sort(deficient.begin(), deficient.end(), [&](int a, int b) {
                const auto& ra = records[static_cast<std::size_t>(a)];
                const auto& rb = records[static_cast<std::size_t>(b)];
                if (ra.residual != rb.residual) return ra.residual < rb.residual;
                return std::lexicographical_compare(
                    ra.y_coords.data(), ra.y_coords.data() + ra.y_coords.size(),
                    rb.y_coords.data(), rb.y_coords.data() + rb.y_coords.size());
            });
            std::vector<Eigen::VectorXd> dcoords;
            dcoords.reserve(deficient.size());
            for (int i : deficient) dcoords.push_back(records[static_cast<std::size_t>(i)].y_coords);
            const std::vector<int> dkept =
                dedup_torus_points(torus, dcoords, kTangentialMergeRadius);
            std::vector<IntersectionRecord> merged;
            merged.reserve(full_rank.size() + dkept.size());
            for (int i : full_rank) merged.push_back(std::move(records[static_cast<std::size_t>(i)]));
            for (int di : dkept)
                merged.push_back(std::move(
                    records[static_cast<std::size_t>(deficient[static_cast<std::size_t>(di)])]));
            std::sort(merged.begin(), merged.end(),
                      [](const IntersectionRecord& a, const IntersectionRecord& b) {
                          return std::lexicographical_compare(
                              a.y_coords.data(), a.y_coords.data() + a.y_coords.size(),
                              b.y_coords.data(), b.y_coords.data() + b.y_coords.size());
                      });
            records = std::move(merged);
        }
    }

    if (warnings) {
        const std::int64_t expected = expected_count(X, Y, n);
        if (static_cast<std::int64_t>(records.size()) < expected)
            warnings->push_back("GridTooCoarse: n=" + std::to_string(n) + " found " +
                                std::to_string(records.size()) + " of " + std::to_string(expected));
    }
    if (opts.classify) classify_components(torus, records, Y, X, n, opts.tol, opts.threads);
    return records;
}

namespace {

// Predictor-corrector walk along the Jacobian null direction; reports
// whether the walk stays on both divisors.
bool curve_probe(const GraphSystem& sys, const Eigen::VectorXd& y, double tol) {
    Eigen::Vector2cd z = sys.torus.lift(y);
    Eigen::Vector2cd dir = Eigen::Vector2cd::Zero();
    for (int step = 0; step < kProbeSteps; ++step) {
        SystemEval e = sys.eval(z, true);
        Eigen::JacobiSVD<Eigen::Matrix2cd> svd(e.J, Eigen::ComputeFullV);
        Eigen::Vector2cd v = svd.matrixV().col(1);
        if (step > 0 && (dir.adjoint() * v)(0).real() < 0) v = -v;
        dir = v;
        z += kProbeStep * v;
        // corrector: pull back onto the system
        for (int c = 0; c < 3; ++c) {
            SystemEval ec = sys.eval(z, true);
            if (ec.residual <= tol) break;
            z += pinv_step(ec.J, Eigen::Vector2cd(ec.f1, ec.f2));
        }
        if (sys.eval(z, false).residual > tol) return false;
    }
    return true;
}

} // namespace

void classify_components(const AbelianTorus& torus, std::vector<IntersectionRecord>& records,
                         const ThetaDivisor& Y, const ThetaDivisor& X, std::int64_t n, double tol,
                         int threads) {
    if (records.empty()) return;
    DivisorEvaluator evY(torus, Y, tol);
    DivisorEvaluator evX(torus, X, tol);
    GraphSystem sys{torus, evY, evX, n};

    parallel_for(static_cast<std::int64_t>(records.size()), [&](std::int64_t i) {
        auto& rec = records[static_cast<std::size_t>(i)];
        rec.classification = Classification::ExpectedIsolated;
        rec.tangential = false;
        if (rec.jacobian_min_sv < kRankDeficientSV) {
            if (curve_probe(sys, rec.y_coords, tol))
                rec.classification = Classification::UnexpectedPositiveDim;
            else
                rec.tangential = true;
        }
    }, threads);

    // Cluster heuristic: an elongated cluster of more than 4x the expected
    // count of mutually-nearby roots is a positive-dimensional component.
    const std::int64_t expected = expected_count(X, Y, n);
    std::vector<int> open;
    for (int i = 0; i < static_cast<int>(records.size()); ++i)
        if (records[static_cast<std::size_t>(i)].classification == Classification::ExpectedIsolated)
            open.push_back(i);
    if (static_cast<std::int64_t>(open.size()) <= 4 * expected) return;

    const double link = 0.08;
    std::vector<int> parent(open.size());
    for (std::size_t i = 0; i < open.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    for (std::size_t i = 0; i < open.size(); ++i)
        for (std::size_t j = i + 1; j < open.size(); ++j) {
            if (torus_distance(torus, records[static_cast<std::size_t>(open[i])].y_coords,
                               records[static_cast<std::size_t>(open[j])].y_coords) <= link) {
                const int a = find(static_cast<int>(i)), b = find(static_cast<int>(j));
                if (a != b) parent[static_cast<std::size_t>(a)] = b;
            }
        }
    std::unordered_map<int, std::vector<int>> clusters;
    for (std::size_t i = 0; i < open.size(); ++i)
        clusters[find(static_cast<int>(i))].push_back(open[i]);
    for (auto& [root, members] : clusters) {
        if (static_cast<std::int64_t>(members.size()) <= 4 * expected) continue;
        // elongation: diameter large against the nearest-neighbor scale
        double diam = 0.0, nnsum = 0.0;
        const std::size_t sample = std::min<std::size_t>(members.size(), 64);
        for (std::size_t i = 0; i < sample; ++i) {
            double nn = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < sample; ++j) {
                if (i == j) continue;
                const double d = torus_distance(
                    torus, records[static_cast<std::size_t>(members[i])].y_coords,
                    records[static_cast<std::size_t>(members[j])].y_coords);
                diam = std::max(diam, d);
                nn = std::min(nn, d);
            }
            nnsum += nn;
        }
        const double nnavg = nnsum / static_cast<double>(sample);
        if (diam > 6.0 * nnavg)
            for (int m : members)
                records[static_cast<std::size_t>(m)].classification =
                    Classification::UnexpectedPositiveDim;
    }
}

ScanReport properness_scan(const AbelianTorus& torus, const ThetaDivisor& X,
                           const ThetaDivisor& Y, std::int64_t n_min, std::int64_t n_max,
                           const SolveOptions& opts, bool keep_records) {
    if (n_min > n_max) throw ValidationError("properness_scan: empty n range");
    ScanReport report;
    report.n_min = n_min;
    report.n_max = n_max;
    for (std::int64_t n = n_min; n <= n_max; ++n) {
        if (n == 0) continue;
        auto records = solve_graph_system(torus, Y, X, n, opts, &report.warnings);
        CountPair counts;
        counts.expected = expected_count(X, Y, n);
        counts.found = static_cast<std::int64_t>(records.size());
        std::vector<Eigen::VectorXd> xs;
        xs.reserve(records.size());
        bool improper = false;
        for (const auto& r : records) {
            xs.push_back(r.x_coords);
            if (r.classification == Classification::UnexpectedPositiveDim) improper = true;
        }
        counts.x_distinct =
            static_cast<std::int64_t>(dedup_torus_points(torus, xs, kDedupDistance).size());
        report.counts_per_n[n] = counts;
        if (improper) report.improper_n.push_back(n);
        if (keep_records) report.records_per_n[n] = std::move(records);
    }
    return report;
}

ScanReport density_scan(const AbelianTorus& torus, const ThetaDivisor& X, const ThetaDivisor& Y,
                        const std::vector<std::int64_t>& checkpoints, const SolveOptions& opts,
                        int probe_count, std::uint64_t seed,
                        std::vector<Eigen::VectorXd>* union_points) {
    if (checkpoints.empty()) throw ValidationError("density_scan: no checkpoints");
    std::vector<std::int64_t> cps = checkpoints;
    std::sort(cps.begin(), cps.end());
    if (cps.front() < 2) throw ValidationError("density_scan: checkpoints start at n >= 2");

    ScanReport report;
    report.n_min = 2;
    report.n_max = cps.back();
    std::vector<Eigen::VectorXd> points;
    std::size_t next = 0;
    for (std::int64_t n = 2; n <= cps.back(); ++n) {
        auto records = solve_graph_system(torus, Y, X, n, opts, &report.warnings);
        CountPair counts;
        counts.expected = expected_count(X, Y, n);
        counts.found = static_cast<std::int64_t>(records.size());
        std::vector<Eigen::VectorXd> xs;
        for (const auto& r : records) {
            xs.push_back(r.x_coords);
            if (r.classification == Classification::ExpectedIsolated) points.push_back(r.x_coords);
        }
        counts.x_distinct =
            static_cast<std::int64_t>(dedup_torus_points(torus, xs, kDedupDistance).size());
        report.counts_per_n[n] = counts;
        while (next < cps.size() && cps[next] == n) {
            report.coverage_radius_per_N[static_cast<int>(n)] =
                coverage_metric(torus, X, points, probe_count, seed);
            ++next;
        }
    }
    if (union_points) *union_points = std::move(points);
    return report;
}

double coverage_metric(const AbelianTorus& torus, const ThetaDivisor& X,
                       const std::vector<Eigen::VectorXd>& intersection_points, int probe_count,
                       std::uint64_t seed) {
    if (intersection_points.empty())
        throw ValidationError("coverage_metric: intersection point list is empty");
    if (probe_count < 1) throw ValidationError("coverage_metric: probe_count must be >= 1");
    const auto probes = sample_points(torus, X, probe_count, seed);
    double radius = 0.0;
    for (const auto& p : probes) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& q : intersection_points)
            best = std::min(best, torus_distance(torus, p.point.coords(), q));
        radius = std::max(radius, best);
    }
    return radius;
}

} // namespace abelint
