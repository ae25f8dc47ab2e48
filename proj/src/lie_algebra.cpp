#include "xhom/lie_algebra.hpp"

#include <sstream>

namespace xhom {

namespace {

std::string coords_str(const RatVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << rat_str(v[i]);
    os << ")";
    return os.str();
}

}  // namespace

std::string JacobiWitness::describe() const {
    std::ostringstream os;
    os << "jacobi fails on (e" << i + 1 << ", e" << j + 1 << ", e" << k + 1
       << "): cyclic sum = " << coords_str(residual);
    return os.str();
}

LieAlgebraSpec::LieAlgebraSpec(std::size_t dim, std::vector<Rat> structure)
    : dim_(dim), c_(std::move(structure)) {
    if (c_.size() != dim * dim * dim) throw InputError("structure tensor has wrong size");
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j <= i; ++j)
            for (std::size_t k = 0; k < dim; ++k)
                if (c(i, j, k) != -c(j, i, k))
                    throw InputError("structure constants are not antisymmetric at (" +
                                     std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
}

LieAlgebraSpec LieAlgebraSpec::abelian(std::size_t dim) {
    return LieAlgebraSpec(dim, std::vector<Rat>(dim * dim * dim));
}

LieAlgebraSpec LieAlgebraSpec::solvable2d() {
    std::vector<Rat> c(8);
    c[(0 * 2 + 1) * 2 + 1] = 2;   // [e1, e2] = 2 e2
    c[(1 * 2 + 0) * 2 + 1] = -2;
    return LieAlgebraSpec(2, std::move(c));
}

LieAlgebraSpec LieAlgebraSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
        throw InputError("algebra json needs an integer 'dim'");
    const long long dim_raw = j["dim"].get<long long>();
    if (dim_raw < 1 || dim_raw > 16) throw InputError("algebra dim out of range [1, 16]");
    const std::size_t n = static_cast<std::size_t>(dim_raw);
    std::vector<Rat> c(n * n * n);
    std::vector<bool> seen(n * n, false);
    for (const auto& b : j.value("brackets", nlohmann::json::array())) {
        if (!b.contains("i") || !b.contains("j") || !b.contains("result"))
            throw InputError("bracket entry needs i, j, result");
        const auto gi = b["i"].get<long long>(), gj = b["j"].get<long long>();
        if (gi < 1 || gj < 1 || gi > static_cast<long long>(n) || gj > static_cast<long long>(n))
            throw InputError("bracket generator index out of range");
        if (gi == gj) throw InputError("bracket entry with i == j");
        const std::size_t i = static_cast<std::size_t>(gi - 1), jj = static_cast<std::size_t>(gj - 1);
        const auto& res = b["result"];
        if (!res.is_array() || res.size() != n)
            throw InputError("bracket result must list all " + std::to_string(n) + " coordinates");
        RatVec v(n);
        for (std::size_t k = 0; k < n; ++k) {
            const auto& e = res[k];
            // Coordinates come either bare ("2") or as one-element columns (["2"]).
            const auto& s = e.is_array() && e.size() == 1 ? e[0] : e;
            if (!s.is_string()) throw InputError("bracket coordinate must be a rational string");
            v[k] = parse_rat(s.get<std::string>());
        }
        for (std::size_t k = 0; k < n; ++k) {
            Rat want = i < jj ? v[k] : -v[k];
            std::size_t a = std::min(i, jj), b2 = std::max(i, jj);
            std::size_t flat = (a * n + b2) * n + k;
            if (seen[a * n + b2] && c[flat] != want)
                throw InputError("conflicting duplicate bracket for (e" + std::to_string(a + 1) +
                                 ", e" + std::to_string(b2 + 1) + ")");
            c[flat] = want;
        }
        seen[std::min(i, jj) * n + std::max(i, jj)] = true;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t jj = i + 1; jj < n; ++jj)
            for (std::size_t k = 0; k < n; ++k) c[(jj * n + i) * n + k] = -c[(i * n + jj) * n + k];
    return LieAlgebraSpec(n, std::move(c));
}

nlohmann::json LieAlgebraSpec::to_json() const {
    nlohmann::json brackets = nlohmann::json::array();
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j) {
            bool nonzero = false;
            nlohmann::json result = nlohmann::json::array();
            for (std::size_t k = 0; k < dim_; ++k) {
                if (c(i, j, k) != 0) nonzero = true;
                result.push_back(nlohmann::json::array({rat_str(c(i, j, k))}));
            }
            if (nonzero)
                brackets.push_back({{"i", i + 1}, {"j", j + 1}, {"result", result}});
        }
    return {{"dim", dim_}, {"brackets", brackets}};
}

RatVec LieAlgebraSpec::bracket(const RatVec& u, const RatVec& v) const {
    if (u.size() != dim_ || v.size() != dim_) throw InputError("bracket operand dimension mismatch");
    RatVec r(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j) {
            if (v[j] == 0) continue;
            Rat f = u[i] * v[j];
            for (std::size_t k = 0; k < dim_; ++k) r[k] += f * c(i, j, k);
        }
    }
    return r;
}

std::optional<JacobiWitness> LieAlgebraSpec::check_jacobi() const {
    auto basis = [&](std::size_t i) {
        RatVec v(dim_);
        v[i] = 1;
        return v;
    };
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = i + 1; j < dim_; ++j)
            for (std::size_t k = j + 1; k < dim_; ++k) {
                RatVec s = bracket(bracket(basis(i), basis(j)), basis(k));
                RatVec t = bracket(bracket(basis(j), basis(k)), basis(i));
                RatVec u = bracket(bracket(basis(k), basis(i)), basis(j));
                for (std::size_t m = 0; m < dim_; ++m) s[m] += t[m] + u[m];
                if (!vec_is_zero(s)) return JacobiWitness{i, j, k, std::move(s)};
            }
    return std::nullopt;
}

bool LieAlgebraSpec::is_solvable2d_presentation() const {
    return *this == solvable2d();
}

AlgebraAction::AlgebraAction(LieAlgebraSpec domain, LieAlgebraSpec codomain,
                             std::vector<RatMatrix> mats)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), mats_(std::move(mats)) {
    if (mats_.size() != domain_.dim()) throw InputError("action needs one matrix per domain generator");
    for (const auto& m : mats_)
        if (m.rows() != codomain_.dim() || m.cols() != codomain_.dim())
            throw InputError("action matrix has wrong shape");
}

AlgebraAction AlgebraAction::adjoint(const LieAlgebraSpec& a) {
    std::vector<RatMatrix> mats;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        RatMatrix m(a.dim(), a.dim());
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (std::size_t k = 0; k < a.dim(); ++k) m.at(k, j) = a.c(i, j, k);
        mats.push_back(std::move(m));
    }
    return AlgebraAction(a, a, std::move(mats));
}

AlgebraAction AlgebraAction::zero(LieAlgebraSpec domain, LieAlgebraSpec codomain) {
    std::vector<RatMatrix> mats(domain.dim(), RatMatrix(codomain.dim(), codomain.dim()));
    return AlgebraAction(std::move(domain), std::move(codomain), std::move(mats));
}

RatMatrix AlgebraAction::of(const RatVec& x) const {
    if (x.size() != domain_.dim()) throw InputError("action argument dimension mismatch");
    RatMatrix m(codomain_.dim(), codomain_.dim());
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0) m = m + mats_[i].scaled(x[i]);
    return m;
}

std::string AlgebraAction::Witness::describe() const {
    std::ostringstream os;
    if (kind == Kind::Derivation)
        os << "theta(e" << i + 1 << ") violates Leibniz on (f" << j + 1 << ", f" << k + 1 << ")";
    else
        os << "theta([e" << i + 1 << ", e" << j + 1 << "]) != [theta(e" << i + 1
           << "), theta(e" << j + 1 << ")]";
    return os.str();
}

std::optional<AlgebraAction::Witness> AlgebraAction::check() const {
    const std::size_t ng = domain_.dim(), nh = codomain_.dim();
    auto basis = [&](std::size_t i) {
        RatVec v(nh);
        v[i] = 1;
        return v;
    };
    for (std::size_t i = 0; i < ng; ++i)
        for (std::size_t a = 0; a < nh; ++a)
            for (std::size_t b = a + 1; b < nh; ++b) {
                RatVec lhs = mats_[i].apply(codomain_.bracket(basis(a), basis(b)));
                RatVec r1 = codomain_.bracket(mats_[i].apply(basis(a)), basis(b));
                RatVec r2 = codomain_.bracket(basis(a), mats_[i].apply(basis(b)));
                for (std::size_t m = 0; m < nh; ++m) lhs[m] -= r1[m] + r2[m];
                if (!vec_is_zero(lhs)) return Witness{Witness::Kind::Derivation, i, a, b};
            }
    for (std::size_t i = 0; i < ng; ++i)
        for (std::size_t j = i + 1; j < ng; ++j) {
            RatVec gij(ng);
            for (std::size_t k = 0; k < ng; ++k) gij[k] = domain_.c(i, j, k);
            RatMatrix lhs = of(gij);
            RatMatrix rhs = mats_[i] * mats_[j] - mats_[j] * mats_[i];
            if (!(lhs - rhs).is_zero()) return Witness{Witness::Kind::Homomorphism, i, j, 0};
        }
    return std::nullopt;
}

}  // namespace xhom
