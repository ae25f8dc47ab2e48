#include "xhom/crossed_hom.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace xhom {

bool residual_is_zero(const ResidualTable& t) {
    for (const auto& e : t)
        if (!vec_is_zero(e.value)) return false;
    return true;
}

std::string residual_report(const ResidualTable& t) {
    std::ostringstream os;
    for (const auto& e : t) {
        if (vec_is_zero(e.value)) continue;
        os << "(e" << e.i + 1 << ", e" << e.j + 1 << "): ";
        for (std::size_t k = 0; k < e.value.size(); ++k)
            os << (k ? ", " : "") << rat_str(e.value[k]);
        os << "; ";
    }
    std::string s = os.str();
    return s.empty() ? "all residuals zero" : s;
}

ResidualTable crossed_residual(const RatMatrix& d, const AlgebraAction& theta) {
    const LieAlgebraSpec& g = theta.domain();
    const LieAlgebraSpec& h = theta.codomain();
    if (d.rows() != h.dim() || d.cols() != g.dim())
        throw InputError("candidate matrix must be " + std::to_string(h.dim()) + "x" +
                         std::to_string(g.dim()));
    auto column = [&](std::size_t c) {
        RatVec v(h.dim());
        for (std::size_t r = 0; r < h.dim(); ++r) v[r] = d.at(r, c);
        return v;
    };
    ResidualTable out;
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i + 1; j < g.dim(); ++j) {
            RatVec gij(g.dim());
            for (std::size_t k = 0; k < g.dim(); ++k) gij[k] = g.c(i, j, k);
            RatVec res = d.apply(gij);
            RatVec di = column(i), dj = column(j);
            RatVec t1 = theta.matrix(i).apply(dj);
            RatVec t2 = theta.matrix(j).apply(di);
            RatVec br = h.bracket(di, dj);
            for (std::size_t k = 0; k < h.dim(); ++k) res[k] -= t1[k] - t2[k] + br[k];
            out.push_back({i, j, std::move(res)});
        }
    return out;
}

RatMatrix candidate_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("matrix"))
        throw InputError("candidate JSON needs an object with a \"matrix\" field");
    const nlohmann::json& m = j.at("matrix");
    if (!m.is_array() || m.empty())
        throw InputError("\"matrix\" must be a non-empty array of rows");
    std::vector<std::vector<std::string>> rows;
    for (const nlohmann::json& r : m) {
        if (!r.is_array()) throw InputError("matrix rows must be arrays");
        std::vector<std::string> row;
        for (const nlohmann::json& cell : r) {
            if (cell.is_string())
                row.push_back(cell.get<std::string>());
            else if (cell.is_number_integer())
                row.push_back(std::to_string(cell.get<long long>()));
            else
                throw InputError("matrix entries must be rational strings like \"3/5\"");
        }
        rows.push_back(std::move(row));
    }
    return RatMatrix(rows);
}

AlgCrossedHom::AlgCrossedHom(AlgebraAction theta, RatMatrix d)
    : theta_(std::move(theta)), d_(std::move(d)) {
    if (auto w = theta_.check())
        throw InputError("action is not a representation by derivations: " + w->describe());
    ResidualTable t = crossed_residual(d_, theta_);
    if (!residual_is_zero(t))
        throw InputError("not a crossed homomorphism: " + residual_report(t));
}

TwistedRep::TwistedRep(const AlgCrossedHom& d)
    : domain_(d.source()), codomain_(d.target()) {
    const AlgebraAction ad_h = AlgebraAction::adjoint(codomain_);
    for (std::size_t i = 0; i < domain_.dim(); ++i) {
        RatVec di(codomain_.dim());
        for (std::size_t r = 0; r < codomain_.dim(); ++r) di[r] = d.matrix().at(r, i);
        mats_.push_back(d.action().matrix(i) + ad_h.of(di));
    }
    // theta_d must again be a Lie algebra homomorphism whenever d satisfies
    // the crossed identity; re-checked here to catch construction bugs.
    for (std::size_t i = 0; i < domain_.dim(); ++i)
        for (std::size_t j = i + 1; j < domain_.dim(); ++j) {
            RatVec gij(domain_.dim());
            for (std::size_t k = 0; k < domain_.dim(); ++k) gij[k] = domain_.c(i, j, k);
            RatMatrix lhs = of(gij);
            RatMatrix rhs = mats_[i] * mats_[j] - mats_[j] * mats_[i];
            if (!(lhs - rhs).is_zero())
                throw InputError("twisted representation fails the bracket identity");
        }
}

RatMatrix TwistedRep::of(const RatVec& x) const {
    if (x.size() != domain_.dim()) throw InputError("twisted rep argument dimension mismatch");
    RatMatrix m(codomain_.dim(), codomain_.dim());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) m = m + mats_[i].scaled(x[i]);
    return m;
}

Classification2D classify_2d(const LieAlgebraSpec& a, const AlgebraAction& theta) {
    if (!a.is_solvable2d_presentation())
        throw InputError("classification requires the solvable2d presentation [e1,e2] = 2 e2");
    if (!(theta == AlgebraAction::adjoint(a)))
        throw InputError("classification requires the adjoint action");
    // With d = [[d11,d12],[d21,d22]] the residual on (e1, e2) reduces to the
    // two equations d12 = 0 and d11 (1 + d22) = 0, giving exactly:
    return Classification2D{
        "d = [[0, 0], [lambda, mu]]  (d11 = 0 branch)",
        "d = [[p, 0], [q, -1]], p != 0  (d22 = -1 branch)",
    };
}

RatMatrix family_a_member(const Rat& lambda, const Rat& mu) {
    RatMatrix m(2, 2);
    m.at(1, 0) = lambda;
    m.at(1, 1) = mu;
    return m;
}

RatMatrix family_b_member(const Rat& p, const Rat& q) {
    if (p == 0) throw InputError("family B requires p != 0");
    RatMatrix m(2, 2);
    m.at(0, 0) = p;
    m.at(1, 0) = q;
    m.at(1, 1) = -1;
    return m;
}

namespace {

struct NumericSystem {
    std::size_t ng, nh;
    std::vector<Eigen::MatrixXd> th;       // action matrices
    std::vector<double> cg, ch;            // structure tensors, flat (i*n + j)*n + k

    explicit NumericSystem(const AlgebraAction& theta)
        : ng(theta.domain().dim()), nh(theta.codomain().dim()) {
        for (std::size_t i = 0; i < ng; ++i) {
            Eigen::MatrixXd m(nh, nh);
            for (std::size_t r = 0; r < nh; ++r)
                for (std::size_t c = 0; c < nh; ++c) m(r, c) = to_double(theta.matrix(i).at(r, c));
            th.push_back(std::move(m));
        }
        cg.resize(ng * ng * ng);
        ch.resize(nh * nh * nh);
        for (std::size_t i = 0; i < ng; ++i)
            for (std::size_t j = 0; j < ng; ++j)
                for (std::size_t k = 0; k < ng; ++k)
                    cg[(i * ng + j) * ng + k] = to_double(theta.domain().c(i, j, k));
        for (std::size_t i = 0; i < nh; ++i)
            for (std::size_t j = 0; j < nh; ++j)
                for (std::size_t k = 0; k < nh; ++k)
                    ch[(i * nh + j) * nh + k] = to_double(theta.codomain().c(i, j, k));
    }

    std::size_t pairs() const { return ng * (ng - 1) / 2; }

    Eigen::VectorXd residual(const Eigen::MatrixXd& d) const {
        Eigen::VectorXd r(pairs() * nh);
        std::size_t row = 0;
        for (std::size_t i = 0; i < ng; ++i)
            for (std::size_t j = i + 1; j < ng; ++j) {
                for (std::size_t k = 0; k < nh; ++k) {
                    double v = 0;
                    for (std::size_t c = 0; c < ng; ++c) v += cg[(i * ng + j) * ng + c] * d(k, c);
                    v -= (th[i] * d.col(j))(k) - (th[j] * d.col(i))(k);
                    for (std::size_t a = 0; a < nh; ++a)
                        for (std::size_t b = 0; b < nh; ++b)
                            v -= d(a, i) * d(b, j) * ch[(a * nh + b) * nh + k];
                    r(row++) = v;
                }
            }
        return r;
    }

    Eigen::MatrixXd jacobian(const Eigen::MatrixXd& d) const {
        Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(pairs() * nh, nh * ng);
        std::size_t base = 0;
        for (std::size_t i = 0; i < ng; ++i)
            for (std::size_t j = i + 1; j < ng; ++j) {
                for (std::size_t k = 0; k < nh; ++k)
                    for (std::size_t r = 0; r < nh; ++r)
                        for (std::size_t c = 0; c < ng; ++c) {
                            double v = (k == r) ? cg[(i * ng + j) * ng + c] : 0.0;
                            if (c == j) v -= th[i](k, r);
                            if (c == i) v += th[j](k, r);
                            if (c == i)
                                for (std::size_t b = 0; b < nh; ++b)
                                    v -= d(b, j) * ch[(r * nh + b) * nh + k];
                            if (c == j)
                                for (std::size_t a = 0; a < nh; ++a)
                                    v -= d(a, i) * ch[(a * nh + r) * nh + k];
                            jac(base + k, r * ng + c) = v;
                        }
                base += nh;
            }
        return jac;
    }
};

}  // namespace

std::vector<NumericSolution> solve_numeric(const AlgebraAction& theta,
                                           const NumericSolveOptions& opts) {
    if (auto w = theta.check())
        throw InputError("action is not a representation by derivations: " + w->describe());
    const NumericSystem sys(theta);
    const std::size_t n_unknown = sys.nh * sys.ng;
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> box(-opts.box, opts.box);

    std::vector<std::vector<double>> accepted;
    for (int s = 0; s < opts.starts; ++s) {
        Eigen::MatrixXd d(sys.nh, sys.ng);
        for (std::size_t r = 0; r < sys.nh; ++r)
            for (std::size_t c = 0; c < sys.ng; ++c) d(r, c) = box(rng);
        for (int it = 0; it < opts.max_iter; ++it) {
            Eigen::VectorXd r = sys.residual(d);
            if (r.lpNorm<Eigen::Infinity>() < opts.accept_residual) break;
            // Minimum-norm Gauss-Newton step; the system is rank-deficient
            // along the solution families, so use a rank-revealing solve.
            Eigen::VectorXd step =
                sys.jacobian(d).completeOrthogonalDecomposition().solve(-r);
            if (step.lpNorm<Eigen::Infinity>() < 1e-14) break;
            for (std::size_t rr = 0; rr < sys.nh; ++rr)
                for (std::size_t cc = 0; cc < sys.ng; ++cc) d(rr, cc) += step(rr * sys.ng + cc);
        }
        if (sys.residual(d).lpNorm<Eigen::Infinity>() >= opts.accept_residual) continue;
        std::vector<double> flat(n_unknown);
        for (std::size_t rr = 0; rr < sys.nh; ++rr)
            for (std::size_t cc = 0; cc < sys.ng; ++cc) flat[rr * sys.ng + cc] = d(rr, cc);
        accepted.push_back(std::move(flat));
    }

    std::sort(accepted.begin(), accepted.end());
    std::vector<NumericSolution> out;
    for (const auto& cand : accepted) {
        bool dup = false;
        for (const auto& rep : out) {
            double dist2 = 0;
            for (std::size_t k = 0; k < n_unknown; ++k) {
                double diff = cand[k] - rep.entries[k];
                dist2 += diff * diff;
            }
            if (std::sqrt(dist2) <= opts.dedup_distance) {
                dup = true;
                break;
            }
        }
        if (dup) continue;
        NumericSolution sol;
        sol.entries = cand;
        Eigen::MatrixXd d(sys.nh, sys.ng);
        for (std::size_t rr = 0; rr < sys.nh; ++rr)
            for (std::size_t cc = 0; cc < sys.ng; ++cc) d(rr, cc) = cand[rr * sys.ng + cc];
        sol.residual = sys.residual(d).lpNorm<Eigen::Infinity>();
        RatMatrix snap(sys.nh, sys.ng);
        bool ok = true;
        for (std::size_t rr = 0; rr < sys.nh && ok; ++rr)
            for (std::size_t cc = 0; cc < sys.ng && ok; ++cc) {
                auto q = rationalize(d(rr, cc));
                if (q)
                    snap.at(rr, cc) = *q;
                else
                    ok = false;
            }
        if (ok && residual_is_zero(crossed_residual(snap, theta))) sol.exact = std::move(snap);
        out.push_back(std::move(sol));
    }
    return out;
}

std::optional<Rat> rationalize(double x, double tol, std::int64_t max_den) {
    if (!std::isfinite(x)) return std::nullopt;
    const bool neg = x < 0;
    const double v = std::abs(x);
    Int p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        if (!std::isfinite(frac) || frac > 1e18) break;
        const double fl = std::floor(frac);
        Int a{static_cast<long long>(fl)};
        Int p2 = a * p1 + p0, q2 = a * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        Rat r{p1, q1};
        if (std::abs(v - to_double(r)) <= tol) return neg ? -r : r;
        const double rem = frac - fl;
        if (rem < 1e-15) break;
        frac = 1.0 / rem;
    }
    return std::nullopt;
}

}  // namespace xhom
