#include "rcmc/exact_analysis.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "rcmc/chains.hpp"
#include "rcmc/errors.hpp"
#include "rcmc/measures.hpp"

namespace rcmc {

namespace {

void check_guard(const SubsetTables& t, int guard_m)
{
    const int m = t.graph().edge_count();
    if (m > guard_m) {
        throw GuardError("edge count", m, guard_m);
    }
}

} // namespace

TransitionMatrix TransitionMatrix::rc_flip(const SubsetTables& t, const Params& pr,
                                           Exec exec, int guard_m)
{
    check_guard(t, guard_m);
    if (pr.p_rc() >= 1) {
        throw std::invalid_argument("rc_flip matrix: needs p_rc < 1");
    }
    const Graph& g = t.graph();
    const int m = g.edge_count();
    const int64_t dim = static_cast<int64_t>(t.size());

    TransitionMatrix M;
    M.kind_ = ChainKind::rc_flip;
    M.states_.resize(static_cast<size_t>(dim));
    for (int64_t i = 0; i < dim; ++i) {
        M.states_[static_cast<size_t>(i)] = static_cast<uint64_t>(i);
    }
    M.pi_ = rc_distribution(t, pr);
    M.p_.assign(static_cast<size_t>(dim) * static_cast<size_t>(dim), Rational(0));

    const Rational step(1, 2 * m);
#ifndef _OPENMP
    (void)exec;
#endif
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int64_t i = 0; i < dim; ++i) {
        const uint64_t z = static_cast<uint64_t>(i);
        const EdgeSubset zs = EdgeSubset::from_mask(m, z);
        Rational diag(1);
        for (int e = 0; e < m; ++e) {
            const Rational ratio = rc_flip_ratio(g, pr, zs, e);
            const Rational pe = step * (ratio < 1 ? ratio : Rational(1));
            M.p_[static_cast<size_t>(i) * static_cast<size_t>(dim)
                 + static_cast<size_t>(z ^ (uint64_t{1} << e))] = pe;
            diag -= pe;
        }
        M.p_[static_cast<size_t>(i) * static_cast<size_t>(dim) + static_cast<size_t>(i)] = diag;
    }
    return M;
}

TransitionMatrix TransitionMatrix::worm_flip(const SubsetTables& t, const Params& pr,
                                             Exec exec, int guard_m)
{
    check_guard(t, guard_m);
    const Graph& g = t.graph();
    const int m = g.edge_count();

    TransitionMatrix M;
    M.kind_ = ChainKind::worm_flip;
    std::vector<int64_t> index(t.size(), -1);
    for (uint64_t mask = 0; mask < t.size(); ++mask) {
        if (t.is_worm_state(mask)) {
            index[mask] = static_cast<int64_t>(M.states_.size());
            M.states_.push_back(mask);
        }
    }
    const int64_t dim = static_cast<int64_t>(M.states_.size());
    const auto full_pi = worm_distribution(t, pr);
    M.pi_.resize(static_cast<size_t>(dim));
    for (int64_t i = 0; i < dim; ++i) {
        M.pi_[static_cast<size_t>(i)] = full_pi[M.states_[static_cast<size_t>(i)]];
    }
    M.p_.assign(static_cast<size_t>(dim) * static_cast<size_t>(dim), Rational(0));

    const Rational step(1, 2 * m);
#ifndef _OPENMP
    (void)exec;
#endif
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int64_t i = 0; i < dim; ++i) {
        const uint64_t w = M.states_[static_cast<size_t>(i)];
        const EdgeSubset ws = EdgeSubset::from_mask(m, w);
        Rational diag(1);
        for (int e = 0; e < m; ++e) {
            const Rational ratio = worm_flip_ratio(g, pr, ws, e); // 0 off the worm space
            if (ratio == 0) {
                continue;
            }
            const Rational pe = step * (ratio < 1 ? ratio : Rational(1));
            M.p_[static_cast<size_t>(i) * static_cast<size_t>(dim)
                 + static_cast<size_t>(index[w ^ (uint64_t{1} << e)])] = pe;
            diag -= pe;
        }
        M.p_[static_cast<size_t>(i) * static_cast<size_t>(dim) + static_cast<size_t>(i)] = diag;
    }
    return M;
}

TransitionMatrix TransitionMatrix::swendsen_wang(const SubsetTables& t, const Params& pr,
                                                 Exec exec, int guard_m)
{
    check_guard(t, guard_m);
    if (pr.q() != 2) {
        throw std::invalid_argument("swendsen_wang matrix: clusters are colored with two colors");
    }
    const Graph& g = t.graph();
    const int n = g.vertex_count();
    const int m = g.edge_count();
    const int64_t dim = static_cast<int64_t>(t.size());

    TransitionMatrix M;
    M.kind_ = ChainKind::swendsen_wang;
    M.states_.resize(static_cast<size_t>(dim));
    for (int64_t i = 0; i < dim; ++i) {
        M.states_[static_cast<size_t>(i)] = static_cast<uint64_t>(i);
    }
    M.pi_ = rc_distribution(t, pr);
    M.p_.assign(static_cast<size_t>(dim) * static_cast<size_t>(dim), Rational(0));

    const Rational p = pr.p_rc();
    std::vector<Rational> keep(static_cast<size_t>(m) + 1), drop(static_cast<size_t>(m) + 1);
    keep[0] = 1;
    drop[0] = 1;
    for (int k = 1; k <= m; ++k) {
        keep[static_cast<size_t>(k)] = keep[static_cast<size_t>(k - 1)] * p;
        drop[static_cast<size_t>(k)] = drop[static_cast<size_t>(k - 1)] * Rational(1 - p);
    }

#ifndef _OPENMP
    (void)exec;
#endif
#pragma omp parallel for schedule(dynamic, 4) if (exec == Exec::parallel)
    for (int64_t i = 0; i < dim; ++i) {
        const uint64_t a = static_cast<uint64_t>(i);
        const auto labels = component_labels(g, EdgeSubset::from_mask(m, a));
        const int comps = t.kappa(a);
        // normalize component labels to 0..comps-1 in first-seen order
        std::vector<int> norm(static_cast<size_t>(n), -1);
        {
            std::vector<int> seen;
            for (int v = 0; v < n; ++v) {
                const int lab = labels[static_cast<size_t>(v)];
                auto it = std::find(seen.begin(), seen.end(), lab);
                if (it == seen.end()) {
                    norm[static_cast<size_t>(v)] = static_cast<int>(seen.size());
                    seen.push_back(lab);
                } else {
                    norm[static_cast<size_t>(v)] = static_cast<int>(it - seen.begin());
                }
            }
        }
        const Rational color_w = Rational(1) / pow2(comps);
        Rational* row = &M.p_[static_cast<size_t>(i) * static_cast<size_t>(dim)];
        for (uint32_t coloring = 0; coloring < (uint32_t{1} << comps); ++coloring) {
            uint64_t aligned = 0;
            for (int e = 0; e < m; ++e) {
                const auto [u, v] = g.edge(e);
                const int cu = coloring >> norm[static_cast<size_t>(u)] & 1;
                const int cv = coloring >> norm[static_cast<size_t>(v)] & 1;
                if (cu == cv) {
                    aligned |= uint64_t{1} << e;
                }
            }
            const int na = std::popcount(aligned);
            for (uint64_t b = aligned;; b = (b - 1) & aligned) {
                const int nb = std::popcount(b);
                row[b] += color_w * keep[static_cast<size_t>(nb)]
                    * drop[static_cast<size_t>(na - nb)];
                if (b == 0) {
                    break;
                }
            }
        }
    }
    return M;
}

bool TransitionMatrix::rows_stochastic() const
{
    const size_t dim = states_.size();
    for (size_t i = 0; i < dim; ++i) {
        Rational s(0);
        for (size_t j = 0; j < dim; ++j) {
            const Rational& v = p_[i * dim + j];
            if (v < 0) {
                return false;
            }
            s += v;
        }
        if (s != 1) {
            return false;
        }
    }
    return true;
}

bool TransitionMatrix::detailed_balance() const
{
    const size_t dim = states_.size();
    for (size_t i = 0; i < dim; ++i) {
        for (size_t j = i + 1; j < dim; ++j) {
            if (pi_[i] * p_[i * dim + j] != pi_[j] * p_[j * dim + i]) {
                return false;
            }
        }
    }
    return true;
}

bool TransitionMatrix::stationary_fixed_point() const
{
    const size_t dim = states_.size();
    for (size_t j = 0; j < dim; ++j) {
        Rational s(0);
        for (size_t i = 0; i < dim; ++i) {
            s += pi_[i] * p_[i * dim + j];
        }
        if (s != pi_[j]) {
            return false;
        }
    }
    return true;
}

Rational TransitionMatrix::min_diagonal() const
{
    const size_t dim = states_.size();
    Rational best = p_[0];
    for (size_t i = 1; i < dim; ++i) {
        const Rational& d = p_[i * dim + i];
        if (d < best) {
            best = d;
        }
    }
    return best;
}

// ---- mixing time ----

namespace {

template <typename T>
std::vector<T> mat_mult(const std::vector<T>& a, const std::vector<T>& b, int64_t n, Exec exec)
{
#ifndef _OPENMP
    (void)exec;
#endif
    std::vector<T> c(static_cast<size_t>(n) * static_cast<size_t>(n), T(0));
#pragma omp parallel for schedule(static) if (exec == Exec::parallel)
    for (int64_t i = 0; i < n; ++i) {
        for (int64_t k = 0; k < n; ++k) {
            const T& aik = a[static_cast<size_t>(i * n + k)];
            if (aik == T(0)) {
                continue;
            }
            for (int64_t j = 0; j < n; ++j) {
                c[static_cast<size_t>(i * n + j)] += aik * b[static_cast<size_t>(k * n + j)];
            }
        }
    }
    return c;
}

template <typename T>
T worst_tv(const std::vector<T>& mat, const std::vector<T>& pi, int64_t n)
{
    T best(0);
    for (int64_t i = 0; i < n; ++i) {
        T s(0);
        for (int64_t j = 0; j < n; ++j) {
            T d = mat[static_cast<size_t>(i * n + j)] - pi[static_cast<size_t>(j)];
            if (d < T(0)) {
                d = -d;
            }
            s += d;
        }
        if (s > best) {
            best = s;
        }
    }
    return best / 2;
}

// P^t assembled from the ladder of repeated squares; ladder[k] = P^(2^k)
template <typename T>
std::vector<T> power_from_ladder(const std::vector<std::vector<T>>& ladder, long t,
                                 int64_t n, Exec exec)
{
    std::vector<T> acc;
    bool have = false;
    for (size_t k = 0; k < ladder.size(); ++k) {
        if (t >> k & 1) {
            acc = have ? mat_mult(acc, ladder[k], n, exec) : ladder[k];
            have = true;
        }
    }
    return acc;
}

long max_entry_bits(const std::vector<Rational>& mat)
{
    long best = 0;
    for (const Rational& v : mat) {
        best = std::max(best, bit_size(v));
    }
    return best;
}

// TV of one designated row against pi
template <typename T>
T row_tv(const std::vector<T>& mat, const std::vector<T>& pi, int64_t n, int64_t row)
{
    T s(0);
    for (int64_t j = 0; j < n; ++j) {
        T d = mat[static_cast<size_t>(row * n + j)] - pi[static_cast<size_t>(j)];
        if (d < T(0)) {
            d = -d;
        }
        s += d;
    }
    return s / 2;
}

// shared search: bracket by squaring, then bisect.  `dist` maps P^t to the
// total-variation quantity being driven below eps (worst row or one row);
// that quantity is non-increasing in t, so bisection is sound.
template <typename T, typename Dist, typename Small, typename Abort>
long search_tau(const std::vector<T>& p0, int64_t n, Exec exec, long max_steps, const T& d0,
                const Dist& dist, const Small& small, const Abort& abort)
{
    if (small(d0)) {
        return 0;
    }

    std::vector<std::vector<T>> ladder;
    ladder.push_back(p0);
    long t = 1;
    while (!small(dist(ladder.back()))) {
        if (t > max_steps) {
            throw std::runtime_error("mixing_time: step budget exhausted");
        }
        abort(ladder.back());
        ladder.push_back(mat_mult(ladder.back(), ladder.back(), n, exec));
        t *= 2;
    }
    if (t == 1) {
        return 1;
    }

    long lo = t / 2; // known: dist(lo) > eps
    long hi = t;     // known: dist(hi) <= eps
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        const auto pm = power_from_ladder(ladder, mid, n, exec);
        if (small(dist(pm))) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

} // namespace

MixingResult mixing_time(const TransitionMatrix& M, const Rational& eps,
                         const MixingOptions& opt, Exec exec, long start_index)
{
    if (eps <= 0) {
        throw std::invalid_argument("mixing_time: eps must be positive");
    }
    const int64_t n = M.dim();
    if (start_index < 0 || start_index >= n) {
        throw std::invalid_argument("mixing_time: start index out of range");
    }
    MixingResult res;
    res.dim = n;

    if (n <= opt.max_exact_dim) {
        std::vector<Rational> p0(static_cast<size_t>(n) * static_cast<size_t>(n));
        for (int64_t i = 0; i < n; ++i) {
            for (int64_t j = 0; j < n; ++j) {
                p0[static_cast<size_t>(i * n + j)] = M.at(i, j);
            }
        }
        // at t = 0 every row is a point mass: TV(delta_x, pi) = 1 - pi(x)
        Rational d0_worst(0), d0_start = Rational(1) - M.pi(start_index);
        for (int64_t i = 0; i < n; ++i) {
            const Rational s = Rational(1) - M.pi(i);
            if (s > d0_worst) {
                d0_worst = s;
            }
        }
        const auto small = [&](const Rational& d) { return d <= eps; };
        const auto abort = [&](const std::vector<Rational>& mat) {
            if (max_entry_bits(mat) > opt.bit_ceiling) {
                throw GuardError("matrix entry bits", max_entry_bits(mat), opt.bit_ceiling);
            }
        };
        try {
            res.tau = search_tau(
                p0, n, exec, opt.max_steps, d0_worst,
                [&](const std::vector<Rational>& mat) { return worst_tv(mat, M.pi(), n); },
                small, abort);
            res.tau_from_start = search_tau(
                p0, n, exec, opt.max_steps, d0_start,
                [&](const std::vector<Rational>& mat) { return row_tv(mat, M.pi(), n, start_index); },
                small, abort);
            res.exact = true;
            res.tolerance = 0.0;
            return res;
        } catch (const GuardError&) {
            // entries outgrew the budget: redo in floating point below
        }
    }

    std::vector<double> p0(static_cast<size_t>(n) * static_cast<size_t>(n));
    std::vector<double> pi(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) {
        pi[static_cast<size_t>(i)] = to_double(M.pi(i));
        for (int64_t j = 0; j < n; ++j) {
            p0[static_cast<size_t>(i * n + j)] = to_double(M.at(i, j));
        }
    }
    const double eps_d = to_double(eps);
    double d0_worst = 0, d0_start = 1.0 - pi[static_cast<size_t>(start_index)];
    for (int64_t i = 0; i < n; ++i) {
        d0_worst = std::max(d0_worst, 1.0 - pi[static_cast<size_t>(i)]);
    }
    const auto small = [&](double d) { return d <= eps_d + opt.tolerance; };
    res.tau = search_tau(
        p0, n, exec, opt.max_steps, d0_worst,
        [&](const std::vector<double>& mat) { return worst_tv(mat, pi, n); }, small,
        [](const std::vector<double>&) {});
    res.tau_from_start = search_tau(
        p0, n, exec, opt.max_steps, d0_start,
        [&](const std::vector<double>& mat) { return row_tv(mat, pi, n, start_index); }, small,
        [](const std::vector<double>&) {});
    res.exact = false;
    res.tolerance = opt.tolerance;
    return res;
}

double mixing_envelope(int n, int m, const Params& pr, const Rational& eps)
{
    if (pr.p_rc() >= 1) {
        throw std::invalid_argument("mixing_envelope: needs p_rc < 1");
    }
    const double ln_inv = -std::log(to_double(Rational(1 - pr.p_rc())));
    const double ln_eps = -std::log(to_double(eps));
    const double n4 = std::pow(static_cast<double>(n), 4);
    const double m2 = static_cast<double>(m) * m;
    return 8.0 * n4 * m2 * (m * ln_inv + ln_eps);
}

double flow_envelope(const Rational& rho, int m, const Params& pr, const Rational& eps)
{
    if (pr.p_rc() >= 1) {
        throw std::invalid_argument("flow_envelope: needs p_rc < 1");
    }
    const double ln_inv = -std::log(to_double(Rational(1 - pr.p_rc())));
    const double ln_eps = -std::log(to_double(eps));
    return to_double(rho) * (m * ln_inv + ln_eps);
}

double spectral_gap(const TransitionMatrix& M)
{
    const int64_t n = M.dim();
    Eigen::MatrixXd s(n, n);
    std::vector<double> root(static_cast<size_t>(n));
    for (int64_t i = 0; i < n; ++i) {
        root[static_cast<size_t>(i)] = std::sqrt(to_double(M.pi(i)));
    }
    for (int64_t i = 0; i < n; ++i) {
        for (int64_t j = 0; j < n; ++j) {
            s(i, j) = root[static_cast<size_t>(i)] * to_double(M.at(i, j))
                / root[static_cast<size_t>(j)];
        }
    }
    const Eigen::MatrixXd sym = (s + s.transpose()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    const auto& ev = solver.eigenvalues(); // ascending
    return n >= 2 ? 1.0 - ev[n - 2] : 1.0;
}

Rational tv_distance(const std::vector<Rational>& a, const std::vector<Rational>& b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("tv_distance: size mismatch");
    }
    Rational s(0);
    for (size_t i = 0; i < a.size(); ++i) {
        Rational d = a[i] - b[i];
        if (d < 0) {
            d = -d;
        }
        s += d;
    }
    return s / 2;
}

double tv_distance_f(const std::vector<double>& a, const std::vector<double>& b)
{
    if (a.size() != b.size()) {
        throw std::invalid_argument("tv_distance: size mismatch");
    }
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        s += std::abs(a[i] - b[i]);
    }
    return s / 2;
}

} // namespace rcmc
