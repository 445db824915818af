#include <croof/oracle.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/QR>

#include <croof/sampling.hpp>

namespace croof::ensemble {

Matrix orthonormal_columns(const Matrix& m) {
    Eigen::HouseholderQR<Matrix> qr(m);
    Matrix q = qr.householderQ();
    return q.leftCols(m.cols());
}

namespace {

int next_pow2(int n) {
    int k = 1;
    while (k < n) k *= 2;
    return k;
}

// Modified Gram-Schmidt with a second pass; cheaper than Householder at these
// sizes and called once per candidate.
void orthonormalize_inplace(Matrix& v) {
    for (int j = 0; j < v.cols(); ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < j; ++i) {
                v.col(j) -= v.col(i).dot(v.col(j)) * v.col(i);
            }
        }
        const double n = v.col(j).norm();
        if (n < 1e-12) {
            // collapsed proposal column; fall back to a basis vector
            v.col(j).setZero();
            v.col(j)(j % v.rows()) = 1;
            for (int i = 0; i < j; ++i) {
                v.col(j) -= v.col(i).dot(v.col(j)) * v.col(i);
            }
            v.col(j).normalize();
        } else {
            v.col(j) /= n;
        }
    }
}

// Average component concurrence of the decomposition induced by the isometry
// V: sum_k sqrt(sum_alpha |u_k^T tau_alpha u_k|^2) over the conjugated rows
// u_k. Weights are implicit because the overlaps are subnormalized.
struct ObjectiveWs {
    Matrix vc, prod;
    Vector z;
    RealVector acc;
};

double objective(const std::vector<Matrix>& tau, const Matrix& v, ObjectiveWs& ws) {
    ws.vc = v.conjugate();
    ws.acc = RealVector::Zero(v.rows());
    for (const Matrix& t : tau) {
        ws.prod.noalias() = ws.vc * t;
        ws.z = ws.prod.cwiseProduct(ws.vc).rowwise().sum();
        ws.acc += ws.z.cwiseAbs2();
    }
    return ws.acc.cwiseSqrt().sum();
}

struct Candidate {
    Matrix v;
    double f = std::numeric_limits<double>::infinity();
};

// Accept-if-better random walk over the frame, step size decaying from 0.5 to
// 1e-3 over the iteration budget, re-orthonormalizing every candidate.
Candidate anneal(const std::vector<Matrix>& tau, int kCount, int r, int iterations,
                 Rng& rng) {
    ObjectiveWs ws;
    Candidate cur;
    cur.v = gaussian_matrix(rng, kCount, r);
    orthonormalize_inplace(cur.v);
    cur.f = objective(tau, cur.v, ws);
    constexpr double kSigma0 = 0.5;
    constexpr double kSigmaFloor = 1e-3;
    Matrix cand(kCount, r);
    for (int it = 0; it < iterations; ++it) {
        const double frac = iterations > 1 ? double(it) / double(iterations - 1) : 1.0;
        const double sigma = kSigma0 * std::pow(kSigmaFloor / kSigma0, frac);
        cand = cur.v;
        for (int i = 0; i < kCount; ++i) {
            for (int j = 0; j < r; ++j) {
                cand(i, j) += sigma * Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
            }
        }
        orthonormalize_inplace(cand);
        const double f = objective(tau, cand, ws);
        if (f < cur.f) {
            cur.v.swap(cand);
            cur.f = f;
        }
    }
    return cur;
}

// Minimum-modulus root of a x^2 + 2 b x + c = 0 via the stable quadratic
// formula; returns 0 when c vanishes or the equation degenerates.
Complex min_root(Complex a, Complex b, Complex c) {
    if (std::abs(c) == 0.0) return {0, 0};
    const Complex disc = std::sqrt(b * b - a * c);
    const Complex q1 = b + disc;
    const Complex q2 = b - disc;
    const Complex qt = std::abs(q1) >= std::abs(q2) ? q1 : q2;
    if (std::abs(qt) < 1e-300) return {0, 0};
    return -c / qt;
}

using Vec2 = Eigen::Vector2cd;
using Mat2 = Eigen::Matrix2cd;

// Singular values of the complex symmetric block [[p, q], [q, s]]. The
// difference s1 - s2 is the quantity descent steps compete against, so it is
// computed from the eigenvalue split of the Gram matrix instead of the
// Frobenius/determinant difference, which cancels catastrophically for
// near-degenerate blocks.
struct PairValues {
    double s1 = 0;
    double s2 = 0;
    double diff = 0;
};

PairValues pair_values(Complex p, Complex q, Complex s) {
    const double b11 = std::norm(p) + std::norm(q);
    const double b22 = std::norm(q) + std::norm(s);
    const Complex b12 = p * std::conj(q) + q * std::conj(s);
    const double mean = 0.5 * (b11 + b22);
    const double half = 0.5 * (b11 - b22);
    const double split = std::sqrt(half * half + std::norm(b12));
    const double det = std::abs(p * s - q * q);
    PairValues out;
    out.s1 = std::sqrt(std::max(0.0, mean + split));
    const double sum = std::sqrt(std::max(0.0, 2.0 * (mean + det)));
    out.diff = sum > 0 ? std::min(2.0 * split / sum, out.s1) : 0.0;
    out.s2 = std::max(0.0, out.s1 - out.diff);
    return out;
}

// Takagi frame of the block, S = W diag(s1, s2) W^T with s1 >= s2 >= 0. The
// leading vector comes from the antilinear eigenproblem S conj(w) = s1 w:
// for any unit eigenvector v of the Hermitian product S conj(S) at s1^2, one
// of S conj(v) +- s1 v is a solution (the other is the i-rotated partner);
// the second column is the orthogonal complement with its phase halved in.
Mat2 takagi2(Complex p, Complex q, Complex s, const PairValues& pv) {
    Mat2 sm;
    sm << p, q, q, s;
    const double b11 = std::norm(p) + std::norm(q);
    const double b22 = std::norm(q) + std::norm(s);
    const Complex b12 = p * std::conj(q) + q * std::conj(s);
    const double lam1 = pv.s1 * pv.s1;

    Vec2 v(b12, Complex(lam1 - b11, 0));
    Vec2 alt(Complex(lam1 - b22, 0), std::conj(b12));
    if (alt.squaredNorm() > v.squaredNorm()) v = alt;
    // Only trust the fallback direction when the split is genuinely below
    // roundoff; in the degenerate regime any direction works.
    if (v.squaredNorm() < 1e-28 * lam1 * lam1) v << 1, 0;
    v.normalize();

    const Vec2 y = sm * v.conjugate();
    Vec2 wPlus = y + pv.s1 * v;
    Vec2 wMinus = Complex(0, 1) * (y - pv.s1 * v);
    Vec2 w1 = wPlus.squaredNorm() >= wMinus.squaredNorm() ? wPlus : wMinus;
    if (w1.squaredNorm() < 1e-300) w1 = v;
    w1.normalize();

    Vec2 w2(-std::conj(w1(1)), std::conj(w1(0)));
    const Complex mu = w2.dot(sm * w2.conjugate());
    if (std::abs(mu) > 1e-300 && pv.s2 > 0) {
        w2 *= std::sqrt(mu / std::abs(mu));
    }
    Mat2 w;
    w.col(0) = w1;
    w.col(1) = w2;
    return w;
}

void rotate_pair(Matrix& u, Matrix& m, int k, int l, Complex g00, Complex g01,
                 Complex g10, Complex g11, Vector& uk, Vector& ul, Vector& mk,
                 Vector& ml) {
    uk = u.row(k).transpose();
    ul = u.row(l).transpose();
    u.row(k) = (g00 * uk + g01 * ul).transpose();
    u.row(l) = (g10 * uk + g11 * ul).transpose();
    mk = m.row(k).transpose();
    ml = m.row(l).transpose();
    m.row(k) = (g00 * mk + g01 * ml).transpose();
    m.row(l) = (g10 * mk + g11 * ml).transpose();
}

// Single-Kraus descent. The restriction of the objective to a pair (k, l) is
// governed by the block [[p, q], [q, s]] of diagonal and cross overlaps; its
// value sum is bounded below by s1 - s2, attained by rotating into the Takagi
// frame of the block and mixing with phase i, which splits the remainder
// evenly across both rows. Sweeping all pairs with that exact move is a
// Jacobi-style minimization of the objective.
double pair_polish(const Matrix& tauM, Matrix& u, int maxSweeps) {
    const int kCount = int(u.rows());
    Matrix m(kCount, int(u.cols()));
    m.noalias() = u * tauM;
    Vector z = m.cwiseProduct(u).rowwise().sum();
    double f = z.cwiseAbs().sum();
    Vector uk(u.cols()), ul(u.cols()), mk(u.cols()), ml(u.cols());
    const double invRoot2 = 1.0 / std::sqrt(2.0);
    Mat2 mix;
    mix << Complex(invRoot2, 0), Complex(0, invRoot2), Complex(0, invRoot2),
        Complex(invRoot2, 0);
    for (int sweep = 0; sweep < maxSweeps; ++sweep) {
        const double scale = std::max(1.0, f);
        bool accepted = false;
        for (int k = 0; k + 1 < kCount; ++k) {
            for (int l = k + 1; l < kCount; ++l) {
                const Complex p = z(k);
                const Complex s = z(l);
                const Complex kl = m.row(k).cwiseProduct(u.row(l)).sum();
                const Complex lk = m.row(l).cwiseProduct(u.row(k)).sum();
                const Complex q = 0.5 * (kl + lk);
                const double pairOld = std::abs(p) + std::abs(s);
                const PairValues pv = pair_values(p, q, s);
                if (pv.diff >= pairOld - 1e-16 * scale) continue;
                const Mat2 g = mix * takagi2(p, q, s, pv).adjoint();
                rotate_pair(u, m, k, l, g(0, 0), g(0, 1), g(1, 0), g(1, 1), uk, ul, mk,
                            ml);
                z(k) = Complex(0.5 * pv.diff, 0);
                z(l) = Complex(-0.5 * pv.diff, 0);
                accepted = true;
            }
        }
        if (!accepted) break;
        m.noalias() = u * tauM;
        z = m.cwiseProduct(u).rowwise().sum();
        const double nf = z.cwiseAbs().sum();
        const double gain = f - nf;
        f = nf;
        if (gain < 1e-15 * std::max(1.0, f)) break;
    }
    return f;
}

// One concentrating pass: rotates each improvable pair so row k lands on a
// null direction of its quadratic form p + 2 q x + s x^2, pushing the whole
// remainder onto row l. Rows zeroed this way freeze pair descent (any pair
// containing one has s1 - s2 equal to its current sum), so this is not a
// polish but a structured escape applied between balanced polishes.
void concentrate_sweep(const Matrix& tauM, Matrix& u) {
    const int kCount = int(u.rows());
    Matrix m(kCount, int(u.cols()));
    m.noalias() = u * tauM;
    Vector z = m.cwiseProduct(u).rowwise().sum();
    const double scale = std::max(1.0, z.cwiseAbs().sum());
    Vector uk(u.cols()), ul(u.cols()), mk(u.cols()), ml(u.cols());
    for (int k = 0; k + 1 < kCount; ++k) {
        for (int l = k + 1; l < kCount; ++l) {
            const Complex p = z(k);
            const Complex s = z(l);
            const Complex kl = m.row(k).cwiseProduct(u.row(l)).sum();
            const Complex lk = m.row(l).cwiseProduct(u.row(k)).sum();
            const Complex q = 0.5 * (kl + lk);
            const double pairOld = std::abs(p) + std::abs(s);
            const PairValues pv = pair_values(p, q, s);
            if (pv.diff >= pairOld - 1e-16 * scale) continue;
            Complex alpha, beta;
            if (std::abs(s) >= std::abs(p)) {
                alpha = 1;
                beta = min_root(s, q, p);
            } else {
                beta = 1;
                alpha = min_root(p, q, s);
            }
            const double nrm = std::sqrt(std::norm(alpha) + std::norm(beta));
            const Complex g00 = alpha / nrm;
            const Complex g01 = beta / nrm;
            const Complex g10 = -std::conj(g01);
            const Complex g11 = std::conj(g00);
            rotate_pair(u, m, k, l, g00, g01, g10, g11, uk, ul, mk, ml);
            z(k) = 0;
            z(l) = g10 * g10 * p + 2.0 * g10 * g11 * q + g11 * g11 * s;
        }
    }
}

// Multi-Kraus descent. With several overlap matrices in play the pair
// subproblem has no closed form, so each pair gets a direct search over the
// rotation angle and mixing phase: a coarse grid to locate the basin, then
// golden-section refinements of angle, phase, angle.
struct PairContext {
    std::vector<Complex> zk, zl, d;
};

double pair_objective(const PairContext& ctx, double c, double s, Complex em) {
    const Complex ep = std::conj(em);
    const Complex em2 = em * em;
    const Complex ep2 = ep * ep;
    double sk = 0;
    double sl = 0;
    for (std::size_t a = 0; a < ctx.zk.size(); ++a) {
        const Complex nk = c * c * ctx.zk[a] + s * s * em2 * ctx.zl[a] - c * s * em * ctx.d[a];
        const Complex nl = s * s * ep2 * ctx.zk[a] + c * c * ctx.zl[a] + c * s * ep * ctx.d[a];
        sk += std::norm(nk);
        sl += std::norm(nl);
    }
    return std::sqrt(sk) + std::sqrt(sl);
}

template <class F>
std::pair<double, double> golden_min(F&& fn, double lo, double hi, int iters) {
    const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - golden * (hi - lo);
    double x2 = lo + golden * (hi - lo);
    double f1 = fn(x1);
    double f2 = fn(x2);
    for (int it = 0; it < iters; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - golden * (hi - lo);
            f1 = fn(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + golden * (hi - lo);
            f2 = fn(x2);
        }
    }
    const double mid = 0.5 * (lo + hi);
    return {mid, fn(mid)};
}

double multi_polish(const std::vector<Matrix>& tau, Matrix& u, int maxSweeps,
                    int goldenIters = 36) {
    const int kCount = int(u.rows());
    const int nA = int(tau.size());
    std::vector<Matrix> m(static_cast<std::size_t>(nA));
    Matrix z(kCount, nA);
    auto refresh = [&] {
        for (int a = 0; a < nA; ++a) {
            m[std::size_t(a)] = u * tau[std::size_t(a)];
            z.col(a) = m[std::size_t(a)].cwiseProduct(u).rowwise().sum();
        }
    };
    auto row_mag = [&](int k) { return std::sqrt(z.row(k).cwiseAbs2().sum()); };
    auto total = [&] {
        double f = 0;
        for (int k = 0; k < kCount; ++k) f += row_mag(k);
        return f;
    };

    refresh();
    double f = total();
    double fWindow = f;
    PairContext ctx;
    ctx.zk.resize(std::size_t(nA));
    ctx.zl.resize(std::size_t(nA));
    ctx.d.resize(std::size_t(nA));
    Vector uk(u.cols()), ul(u.cols()), mk(u.cols()), ml(u.cols());
    constexpr int kThetaGrid = 17;

    for (int sweep = 0; sweep < maxSweeps; ++sweep) {
        const double scale = std::max(1.0, f);
        bool accepted = false;
        for (int k = 0; k + 1 < kCount; ++k) {
            for (int l = k + 1; l < kCount; ++l) {
                for (int a = 0; a < nA; ++a) {
                    ctx.zk[std::size_t(a)] = z(k, a);
                    ctx.zl[std::size_t(a)] = z(l, a);
                    const Matrix& ma = m[std::size_t(a)];
                    const Complex kl = ma.row(k).cwiseProduct(u.row(l)).sum();
                    const Complex lk = ma.row(l).cwiseProduct(u.row(k)).sum();
                    ctx.d[std::size_t(a)] = kl + lk;
                }
                auto eval = [&](double theta, double phi) {
                    return pair_objective(ctx, std::cos(theta), std::sin(theta),
                                          Complex(std::cos(phi), -std::sin(phi)));
                };

                const double base = row_mag(k) + row_mag(l);
                double bestTheta = 0;
                double bestPhi = 0;
                double bestG = base;
                for (const double phi : {0.0, M_PI / 3, 2 * M_PI / 3}) {
                    for (int t = 0; t < kThetaGrid; ++t) {
                        const double theta = -M_PI / 2 + M_PI * t / kThetaGrid;
                        const double g = eval(theta, phi);
                        if (g < bestG) {
                            bestG = g;
                            bestTheta = theta;
                            bestPhi = phi;
                        }
                    }
                }
                auto [t1, g1] = golden_min(
                    [&](double th) { return eval(th, bestPhi); },
                    bestTheta - M_PI / kThetaGrid, bestTheta + M_PI / kThetaGrid,
                    goldenIters);
                if (g1 < bestG) {
                    bestG = g1;
                    bestTheta = t1;
                }
                auto [p1, gp] = golden_min(
                    [&](double ph) { return eval(bestTheta, ph); }, bestPhi - M_PI / 6,
                    bestPhi + M_PI / 6, goldenIters - 8);
                if (gp < bestG) {
                    bestG = gp;
                    bestPhi = p1;
                }
                auto [t2, g2] = golden_min(
                    [&](double th) { return eval(th, bestPhi); }, bestTheta - 0.05,
                    bestTheta + 0.05, goldenIters);
                if (g2 < bestG) {
                    bestG = g2;
                    bestTheta = t2;
                }

                if (bestG >= base - 1e-15 * scale) continue;
                const double c = std::cos(bestTheta);
                const double sn = std::sin(bestTheta);
                const Complex em(std::cos(bestPhi), -std::sin(bestPhi));
                const Complex ep = std::conj(em);
                uk = u.row(k).transpose();
                ul = u.row(l).transpose();
                u.row(k) = (c * uk - em * sn * ul).transpose();
                u.row(l) = (ep * sn * uk + c * ul).transpose();
                for (int a = 0; a < nA; ++a) {
                    Matrix& ma = m[std::size_t(a)];
                    mk = ma.row(k).transpose();
                    ml = ma.row(l).transpose();
                    ma.row(k) = (c * mk - em * sn * ml).transpose();
                    ma.row(l) = (ep * sn * mk + c * ml).transpose();
                    const Complex zk = ctx.zk[std::size_t(a)];
                    const Complex zl = ctx.zl[std::size_t(a)];
                    const Complex d = ctx.d[std::size_t(a)];
                    z(k, a) = c * c * zk + sn * sn * em * em * zl - c * sn * em * d;
                    z(l, a) = sn * sn * ep * ep * zk + c * c * zl + c * sn * ep * d;
                }
                accepted = true;
            }
        }
        if (!accepted) break;
        refresh();
        const double nf = total();
        const double gain = f - nf;
        f = nf;
        if (gain < 1e-13 * std::max(1.0, f)) break;
        if (sweep % 16 == 15) {
            if (f > 0.999 * fWindow) break;
            fWindow = f;
        }
    }
    return f;
}

double polish(const std::vector<Matrix>& tau, Matrix& v, int maxSweeps,
              int goldenIters = 36) {
    Matrix u = v.conjugate();
    const double f = tau.size() == 1 ? pair_polish(tau[0], u, maxSweeps)
                                     : multi_polish(tau, u, maxSweeps, goldenIters);
    v = u.conjugate();
    return f;
}

void kick(Matrix& v, double sigma, Rng& rng) {
    for (int i = 0; i < v.rows(); ++i) {
        for (int j = 0; j < v.cols(); ++j) {
            v(i, j) += sigma * Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
        }
    }
    orthonormalize_inplace(v);
}

// Pair descent alone can sit down on frames where no two-row move improves;
// kick-and-repolish hops knock it into neighboring basins. The first hop for
// a single conjugation is the deterministic concentrating sweep, the rest are
// random kicks with escalating size.
Candidate refine(const std::vector<Matrix>& tau, Candidate c, Rng& rng) {
    const bool single = tau.size() == 1;
    const int cap = single ? 120 : 40;
    c.f = polish(tau, c.v, cap, 30);
    constexpr double kSigmas[] = {0.0, 0.05, 0.15, 0.45};
    for (int h = 0; h < 4 && c.f > 1e-13; ++h) {
        Candidate trial;
        trial.v = c.v;
        if (h == 0 && single) {
            Matrix u = trial.v.conjugate();
            concentrate_sweep(tau[0], u);
            trial.v = u.conjugate();
            orthonormalize_inplace(trial.v);
        } else {
            kick(trial.v, kSigmas[h] > 0 ? kSigmas[h] : 0.05, rng);
        }
        trial.f = polish(tau, trial.v, cap, 30);
        if (trial.f < c.f) c = std::move(trial);
    }
    return c;
}

// Heavy local refinement of the overall winner: a long polish, then several
// escape rounds that alternate the concentrating sweep (single conjugation
// only) with random kicks of varied size. Runs once per oracle call, so its
// budget can afford to be an order beyond the per-restart polish.
Candidate settle(const std::vector<Matrix>& tau, Candidate c, Rng& rng) {
    const bool single = tau.size() == 1;
    const int cap = single ? 3000 : 400;
    c.f = polish(tau, c.v, cap, 45);
    constexpr double kSigmas[] = {0.0, 0.03, 0.1, 0.0, 0.3, 0.8};
    for (int round = 0; round < 6 && c.f > 1e-13; ++round) {
        Candidate trial;
        trial.v = c.v;
        if (kSigmas[round] == 0.0 && single) {
            Matrix u = trial.v.conjugate();
            concentrate_sweep(tau[0], u);
            trial.v = u.conjugate();
            orthonormalize_inplace(trial.v);
        } else {
            kick(trial.v, kSigmas[round] > 0 ? kSigmas[round] : 0.05, rng);
        }
        trial.f = polish(tau, trial.v, cap, 45);
        if (trial.f < c.f) c = std::move(trial);
    }
    return c;
}

}  // namespace

OracleResult convex_roof_oracle(const DensityMatrix& rho, const BilinearOperator& a,
                                const OracleBudget& budget) {
    if (budget.restarts < 1) throw std::invalid_argument("oracle needs at least one restart");
    if (budget.iterations < 0) throw std::invalid_argument("negative iteration budget");
    if (a.dim() != rho.dim()) {
        throw std::invalid_argument("operator and state dimensions differ");
    }

    const TauMatrices tm = tau_matrices(rho, a.kraus());
    const int r = int(tm.xi.cols());
    const int n = rho.dim();

    // Only symmetric parts reach the objective: diagonal overlaps are
    // quadratic forms and pair cross terms are symmetrized, so antisymmetric
    // components contribute exactly zero. Pruning them can collapse a
    // multi-conjugation problem onto the single-block path with its exact
    // pair moves.
    std::vector<Matrix> taus;
    taus.reserve(tm.tau.size());
    double tauScale = 0;
    for (const Matrix& t : tm.tau) tauScale = std::max(tauScale, t.norm());
    for (const Matrix& t : tm.tau) {
        Matrix sym = 0.5 * (t + t.transpose());
        if (sym.norm() > 1e-14 * std::max(1.0, tauScale)) taus.push_back(std::move(sym));
    }
    if (taus.empty()) taus.push_back(Matrix::Zero(r, r));

    OracleResult result;
    if (r == 1) {
        // Pure state: every decomposition repeats the same vector.
        Vector psi = tm.xi.col(0);
        psi /= psi.norm();
        result.bestDecomposition.weights = {1.0};
        result.bestDecomposition.states = {psi};
        result.bestDecomposition.componentConcurrences = {pure_concurrence(a, psi)};
        result.bestDecomposition.reconstructionResidual =
            (psi * psi.adjoint() - rho.matrix()).norm();
        result.upperBound = result.bestDecomposition.componentConcurrences[0];
        result.converged = true;
        return result;
    }

    const int kLo = budget.kMin > 0 ? std::max(budget.kMin, r) : r;
    const int kHi =
        budget.kMax > 0 ? std::max(budget.kMax, kLo) : std::max(next_pow2(r), kLo);

    double bestF = std::numeric_limits<double>::infinity();
    Matrix bestV;
    bool bestCorroborated = false;

    // The restart budget is spread across the K sweep; a pinned K gets all of
    // it.
    const int share = std::max(1, budget.restarts / (kHi - kLo + 1));

    for (int kCount = kLo; kCount <= kHi; ++kCount) {
        std::vector<Candidate> finishers;
        finishers.reserve(std::size_t(share) + 1);
        for (int rs = 0; rs < share; ++rs) {
            Rng rng(budget.seed, (std::uint64_t(kCount) << 24) + std::uint64_t(rs));
            Candidate c = anneal(taus, kCount, r, budget.iterations, rng);
            finishers.push_back(refine(taus, std::move(c), rng));
            ++result.restarts;
        }
        if (kCount > kLo && bestV.size() > 0) {
            // Warm start: the winner from smaller K padded with a lightly
            // noised extra row. A clean zero pad is a fixed point of the pair
            // moves, so the noise is what lets the new row activate.
            Rng rng(budget.seed,
                    (std::uint64_t(kCount) << 24) + std::uint64_t(budget.restarts));
            Candidate c;
            c.v = Matrix(kCount, r);
            c.v.topRows(bestV.rows()) = bestV;
            for (int i = int(bestV.rows()); i < kCount; ++i) {
                for (int j = 0; j < r; ++j) {
                    c.v(i, j) = 0.1 * rng.cnormal();
                }
            }
            orthonormalize_inplace(c.v);
            finishers.push_back(refine(taus, std::move(c), rng));
            ++result.restarts;
        }
        const Candidate* localBest = &finishers.front();
        for (const Candidate& c : finishers) {
            if (c.f < localBest->f) localBest = &c;
        }
        const int corroborating = int(std::count_if(
            finishers.begin(), finishers.end(),
            [&](const Candidate& c) { return c.f <= localBest->f + 1e-6; }));
        if (localBest->f < bestF) {
            bestF = localBest->f;
            bestV = localBest->v;
            bestCorroborated = corroborating >= 2 || budget.restarts == 1;
        }
    }

    {
        Rng rng(budget.seed, (std::uint64_t(kHi) + 1) << 24);
        Candidate c;
        c.v = bestV;
        c.f = bestF;
        c = settle(taus, std::move(c), rng);
        bestV = c.v;
        orthonormalize_inplace(bestV);
    }

    const Matrix phi = tm.xi * bestV.transpose();
    Decomposition& d = result.bestDecomposition;
    for (int k = 0; k < phi.cols(); ++k) {
        const double w = phi.col(k).squaredNorm();
        if (w <= 1e-14) continue;
        const Vector state = phi.col(k) / std::sqrt(w);
        d.weights.push_back(w);
        d.states.push_back(state);
        d.componentConcurrences.push_back(pure_concurrence(a, state));
    }
    d.reconstructionResidual = (reconstruct(d, n) - rho.matrix()).norm();
    double bound = 0;
    for (std::size_t i = 0; i < d.weights.size(); ++i) {
        bound += d.weights[i] * d.componentConcurrences[i];
    }
    result.upperBound = bound;
    result.converged = bestCorroborated;
    return result;
}

}  // namespace croof::ensemble
