#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "tori/json_io.hpp"
#include "tori/scalar.hpp"

namespace tori::linalg {

using cplx = std::complex<double>;

// A generalized permutation matrix: row p reads source index src[p] with a
// phase factor, y[p] = exp(2 pi i phase[p]) * x[src[p]].  Products and
// adjoints stay in this class, and comparisons are exact when the phases
// are exact.
class Monomial {
public:
    Monomial() = default;
    Monomial(std::vector<long long> src, std::vector<Phase> phases)
        : src_(std::move(src)), phases_(std::move(phases)) {
        if (src_.size() != phases_.size()) throw std::invalid_argument("shape mismatch");
    }
    static Monomial identity(size_t dim) {
        std::vector<long long> src(dim);
        for (size_t i = 0; i < dim; ++i) src[i] = static_cast<long long>(i);
        return Monomial(std::move(src), std::vector<Phase>(dim));
    }
    static Monomial scalar(size_t dim, Phase p) {
        Monomial m = identity(dim);
        for (auto& q : m.phases_) q = p;
        return m;
    }

    size_t dim() const { return src_.size(); }
    const std::vector<long long>& src() const { return src_; }
    const std::vector<Phase>& phases() const { return phases_; }

    // (a.compose(b))(x) = a(b(x))
    Monomial compose(const Monomial& b) const {
        if (dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
        std::vector<long long> src(dim());
        std::vector<Phase> ph(dim());
        for (size_t p = 0; p < dim(); ++p) {
            long long q = src_[p];
            src[p] = b.src_[static_cast<size_t>(q)];
            ph[p] = phases_[p] + b.phases_[static_cast<size_t>(q)];
        }
        return Monomial(std::move(src), std::move(ph));
    }

    Monomial adjoint() const {
        std::vector<long long> src(dim());
        std::vector<Phase> ph(dim());
        for (size_t p = 0; p < dim(); ++p) {
            src[static_cast<size_t>(src_[p])] = static_cast<long long>(p);
            ph[static_cast<size_t>(src_[p])] = -phases_[p];
        }
        return Monomial(std::move(src), std::move(ph));
    }

    Monomial scaled(Phase p) const {
        Monomial m = *this;
        for (auto& q : m.phases_) q = q + p;
        return m;
    }

    bool equals(const Monomial& o, double tol = kFloatTol) const {
        if (src_ != o.src_) return false;
        for (size_t i = 0; i < phases_.size(); ++i)
            if (!phases_[i].equals(o.phases_[i], tol)) return false;
        return true;
    }

    // If *this equals phase * o for a constant phase, return it.
    std::optional<Phase> phase_ratio(const Monomial& o, double tol = kFloatTol) const {
        if (src_ != o.src_ || dim() == 0) return std::nullopt;
        Phase r = phases_[0] - o.phases_[0];
        for (size_t i = 1; i < phases_.size(); ++i)
            if (!(phases_[i] - o.phases_[i]).equals(r, tol)) return std::nullopt;
        return r;
    }

    bool is_scalar(double tol = kFloatTol) const {
        for (size_t i = 0; i < src_.size(); ++i)
            if (src_[i] != static_cast<long long>(i)) return false;
        for (size_t i = 1; i < phases_.size(); ++i)
            if (!phases_[i].equals(phases_[0], tol)) return false;
        return true;
    }

    std::vector<cplx> dense() const {
        std::vector<cplx> m(dim() * dim(), cplx(0, 0));
        for (size_t p = 0; p < dim(); ++p)
            m[p * dim() + static_cast<size_t>(src_[p])] = phases_[p].to_complex();
        return m;
    }

private:
    std::vector<long long> src_;
    std::vector<Phase> phases_;
};

// Dense complex matrix, row-major.  Only what the residual checks need.
class Dense {
public:
    Dense() = default;
    Dense(size_t dim, std::vector<cplx> data) : dim_(dim), data_(std::move(data)) {
        if (data_.size() != dim * dim) throw std::invalid_argument("shape mismatch");
    }
    explicit Dense(const Monomial& m) : dim_(m.dim()), data_(m.dense()) {}
    static Dense identity(size_t dim) {
        std::vector<cplx> d(dim * dim, cplx(0, 0));
        for (size_t i = 0; i < dim; ++i) d[i * dim + i] = cplx(1, 0);
        return Dense(dim, std::move(d));
    }

    size_t dim() const { return dim_; }
    const cplx& at(size_t i, size_t j) const { return data_[i * dim_ + j]; }
    cplx& at(size_t i, size_t j) { return data_[i * dim_ + j]; }

    Dense compose(const Dense& o) const {
        if (dim_ != o.dim_) throw std::invalid_argument("dimension mismatch");
        Dense r(dim_, std::vector<cplx>(dim_ * dim_, cplx(0, 0)));
        for (size_t i = 0; i < dim_; ++i)
            for (size_t k = 0; k < dim_; ++k) {
                cplx a = at(i, k);
                if (a == cplx(0, 0)) continue;
                for (size_t j = 0; j < dim_; ++j) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }

    Dense adjoint() const {
        Dense r(dim_, std::vector<cplx>(dim_ * dim_));
        for (size_t i = 0; i < dim_; ++i)
            for (size_t j = 0; j < dim_; ++j) r.at(i, j) = std::conj(at(j, i));
        return r;
    }

    double max_diff(const Dense& o) const {
        double m = 0;
        for (size_t i = 0; i < data_.size(); ++i) m = std::max(m, std::abs(data_[i] - o.data_[i]));
        return m;
    }

    // Distance to the nearest scalar multiple of o (matching the largest
    // entry), used to compare conjugations phase-insensitively.
    double scalar_multiple_residual(const Dense& o) const {
        size_t arg = 0;
        double best = 0;
        for (size_t i = 0; i < data_.size(); ++i)
            if (std::abs(o.data_[i]) > best) {
                best = std::abs(o.data_[i]);
                arg = i;
            }
        if (best == 0) return max_diff(o);
        cplx lambda = data_[arg] / o.data_[arg];
        if (std::abs(lambda) != 0) lambda /= std::abs(lambda);
        double m = 0;
        for (size_t i = 0; i < data_.size(); ++i)
            m = std::max(m, std::abs(data_[i] - lambda * o.data_[i]));
        return m;
    }

    double scalar_residual() const {  // distance to the nearest scalar matrix
        cplx trace(0, 0);
        for (size_t i = 0; i < dim_; ++i) trace += at(i, i);
        cplx lambda = trace / static_cast<double>(dim_);
        double m = 0;
        for (size_t i = 0; i < dim_; ++i)
            for (size_t j = 0; j < dim_; ++j)
                m = std::max(m, std::abs(at(i, j) - (i == j ? lambda : cplx(0, 0))));
        return m;
    }

private:
    size_t dim_ = 0;
    std::vector<cplx> data_;
};

// A unitary given either exactly (monomial) or numerically (dense).
class Unitary {
public:
    Unitary() = default;
    Unitary(Monomial m) : mono_(std::move(m)) {}
    Unitary(Dense d) : dense_(std::move(d)) {}

    bool is_monomial() const { return mono_.has_value(); }
    size_t dim() const { return mono_ ? mono_->dim() : dense_->dim(); }
    const Monomial& mono() const { return *mono_; }
    Dense to_dense() const { return mono_ ? Dense(*mono_) : *dense_; }

    Unitary compose(const Unitary& o) const {
        if (mono_ && o.mono_) return Unitary(mono_->compose(*o.mono_));
        return Unitary(to_dense().compose(o.to_dense()));
    }
    Unitary adjoint() const {
        if (mono_) return Unitary(mono_->adjoint());
        return Unitary(dense_->adjoint());
    }

    double diff(const Unitary& o) const {
        if (mono_ && o.mono_ && mono_->equals(*o.mono_)) return 0.0;
        return to_dense().max_diff(o.to_dense());
    }
    double conjugation_diff(const Unitary& o) const {
        if (mono_ && o.mono_ && mono_->phase_ratio(*o.mono_)) return 0.0;
        return to_dense().scalar_multiple_residual(o.to_dense());
    }
    double scalar_residual() const {
        if (mono_ && mono_->is_scalar()) return 0.0;
        return to_dense().scalar_residual();
    }

    static Unitary from_json(const json& j, Mode mode);
    json to_json() const;

private:
    std::optional<Monomial> mono_;
    std::optional<Dense> dense_;
};

} // namespace tori::linalg
