#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "tori/rational.hpp"

namespace tori::exterior {

inline constexpr int kMaxGrade = 3;

inline long long choose(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

inline long long basis_size(int n, int grade) { return choose(n, grade); }

// Lexicographic rank of an increasing index tuple within the grade-k basis.
inline long long basis_rank(int n, const std::vector<int>& idx) {
    int k = static_cast<int>(idx.size());
    long long rank = 0;
    int prev = -1;
    for (int t = 0; t < k; ++t) {
        for (int a = prev + 1; a < idx[t]; ++a) rank += choose(n - 1 - a, k - 1 - t);
        prev = idx[t];
    }
    return rank;
}

// Inverse of basis_rank: the increasing tuple at a given lexicographic rank.
inline std::vector<int> basis_tuple(int n, int grade, long long rank) {
    std::vector<int> idx(grade);
    int a = 0;
    for (int t = 0; t < grade; ++t) {
        while (true) {
            long long block = choose(n - 1 - a, grade - 1 - t);
            if (rank < block) break;
            rank -= block;
            ++a;
        }
        idx[t] = a++;
    }
    return idx;
}

// Element of the k-th exterior power of R^n (k <= 3), as coefficients over
// the lexicographic wedge basis.  The integral flag asserts the element
// lies in the integer lattice.
template <typename S>
class MultiVectorT {
public:
    MultiVectorT() = default;
    MultiVectorT(int n, int grade)
        : n_(n), grade_(grade), coeffs_(static_cast<size_t>(basis_size(n, grade))) {
        check_shape();
    }
    MultiVectorT(int n, int grade, std::vector<S> coeffs, bool integral = false)
        : n_(n), grade_(grade), coeffs_(std::move(coeffs)), integral_(integral) {
        check_shape();
        if (coeffs_.size() != static_cast<size_t>(basis_size(n_, grade_)))
            throw std::invalid_argument("coefficient count does not match C(n,k)");
        if (integral_) assert_integral();
    }

    static MultiVectorT basis(int n, int grade, const std::vector<int>& idx) {
        MultiVectorT v(n, grade);
        v.coeffs_[static_cast<size_t>(basis_rank(n, idx))] = S(1);
        v.integral_ = true;
        return v;
    }
    static MultiVectorT e(int n, int i) { return basis(n, 1, {i}); }

    int n() const { return n_; }
    int grade() const { return grade_; }
    const std::vector<S>& coeffs() const { return coeffs_; }
    S& operator[](size_t i) { return coeffs_[i]; }
    const S& operator[](size_t i) const { return coeffs_[i]; }
    bool integral() const { return integral_; }
    MultiVectorT& mark_integral() {
        assert_integral();
        integral_ = true;
        return *this;
    }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!(c == S(0))) return false;
        return true;
    }

    friend MultiVectorT operator+(const MultiVectorT& a, const MultiVectorT& b) {
        a.check_same(b);
        MultiVectorT r = a;
        for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = r.coeffs_[i] + b.coeffs_[i];
        r.integral_ = a.integral_ && b.integral_;
        return r;
    }
    friend MultiVectorT operator-(const MultiVectorT& a, const MultiVectorT& b) { return a + (-b); }
    MultiVectorT operator-() const {
        MultiVectorT r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    MultiVectorT scaled(const S& s) const {
        MultiVectorT r = *this;
        for (auto& c : r.coeffs_) c = c * s;
        r.integral_ = false;
        return r;
    }

    friend bool operator==(const MultiVectorT& a, const MultiVectorT& b) {
        return a.n_ == b.n_ && a.grade_ == b.grade_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const MultiVectorT& a, const MultiVectorT& b) { return !(a == b); }

private:
    void check_shape() const {
        if (n_ <= 0) throw std::invalid_argument("dimension must be positive");
        if (grade_ < 0 || grade_ > kMaxGrade)
            throw std::invalid_argument("grade must lie in {0,1,2,3}");
    }
    void check_same(const MultiVectorT& o) const {
        if (n_ != o.n_) throw std::invalid_argument("dimension mismatch");
        if (grade_ != o.grade_) throw std::invalid_argument("grade mismatch");
    }
    void assert_integral() const {
        for (const auto& c : coeffs_)
            if (!scalar_is_integer(c)) throw std::invalid_argument("coefficients are not integral");
    }
    static bool scalar_is_integer(const Rational& r) { return r.is_integer(); }
    static bool scalar_is_integer(long long) { return true; }
    static bool scalar_is_integer(double d) { return d == std::round(d); }

    int n_ = 1;
    int grade_ = 0;
    std::vector<S> coeffs_{S(0)};
    bool integral_ = false;
};

// An antisymmetric k-linear form, stored over the same lexicographic basis
// ordering as MultiVectorT; pairing is the coordinatewise dot product.
template <typename S>
class DualVectorT {
public:
    DualVectorT() = default;
    DualVectorT(int n, int grade)
        : n_(n), grade_(grade), coeffs_(static_cast<size_t>(basis_size(n, grade))) {}
    DualVectorT(int n, int grade, std::vector<S> coeffs, bool integral = false)
        : n_(n), grade_(grade), coeffs_(std::move(coeffs)), integral_(integral) {
        if (coeffs_.size() != static_cast<size_t>(basis_size(n_, grade_)))
            throw std::invalid_argument("coefficient count does not match C(n,k)");
    }

    static DualVectorT dual_basis(int n, int grade, const std::vector<int>& idx) {
        DualVectorT v(n, grade);
        v.coeffs_[static_cast<size_t>(basis_rank(n, idx))] = S(1);
        v.integral_ = true;
        return v;
    }

    int n() const { return n_; }
    int grade() const { return grade_; }
    const std::vector<S>& coeffs() const { return coeffs_; }
    S& operator[](size_t i) { return coeffs_[i]; }
    const S& operator[](size_t i) const { return coeffs_[i]; }
    bool integral() const { return integral_; }

    friend DualVectorT operator+(const DualVectorT& a, const DualVectorT& b) {
        if (a.n_ != b.n_ || a.grade_ != b.grade_) throw std::invalid_argument("shape mismatch");
        DualVectorT r = a;
        for (size_t i = 0; i < r.coeffs_.size(); ++i) r.coeffs_[i] = r.coeffs_[i] + b.coeffs_[i];
        r.integral_ = a.integral_ && b.integral_;
        return r;
    }
    DualVectorT operator-() const {
        DualVectorT r = *this;
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    friend bool operator==(const DualVectorT& a, const DualVectorT& b) {
        return a.n_ == b.n_ && a.grade_ == b.grade_ && a.coeffs_ == b.coeffs_;
    }

private:
    int n_ = 1;
    int grade_ = 0;
    std::vector<S> coeffs_{S(0)};
    bool integral_ = false;
};

// Sign of merging two disjoint increasing tuples into one increasing tuple:
// (-1)^{#inversions}.  Returns 0 if the tuples share an index.
inline int merge_sign(const std::vector<int>& a, const std::vector<int>& b, std::vector<int>& out) {
    out.clear();
    int inversions = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return 0;
        if (a[i] < b[j]) {
            out.push_back(a[i++]);
        } else {
            inversions += static_cast<int>(a.size() - i);
            out.push_back(b[j++]);
        }
    }
    while (i < a.size()) out.push_back(a[i++]);
    while (j < b.size()) out.push_back(b[j++]);
    return (inversions % 2 == 0) ? 1 : -1;
}

template <typename S>
MultiVectorT<S> wedge(const MultiVectorT<S>& u, const MultiVectorT<S>& v) {
    if (u.n() != v.n()) throw std::invalid_argument("dimension mismatch");
    int p = u.grade(), q = v.grade();
    if (p + q > kMaxGrade) throw std::invalid_argument("wedge exceeds grade 3");
    int n = u.n();
    MultiVectorT<S> out(n, p + q);
    long long pu = basis_size(n, p), pv = basis_size(n, q);
    std::vector<int> merged;
    for (long long i = 0; i < pu; ++i) {
        if (u[static_cast<size_t>(i)] == S(0)) continue;
        auto ti = basis_tuple(n, p, i);
        for (long long j = 0; j < pv; ++j) {
            if (v[static_cast<size_t>(j)] == S(0)) continue;
            auto tj = basis_tuple(n, q, j);
            int sign = merge_sign(ti, tj, merged);
            if (sign == 0) continue;
            size_t r = static_cast<size_t>(basis_rank(n, merged));
            S term = u[static_cast<size_t>(i)] * v[static_cast<size_t>(j)];
            out[r] = (sign > 0) ? out[r] + term : out[r] - term;
        }
    }
    if (u.integral() && v.integral()) out.mark_integral();
    return out;
}

template <typename S>
S pair(const DualVectorT<S>& phi, const MultiVectorT<S>& x) {
    if (phi.n() != x.n()) throw std::invalid_argument("dimension mismatch");
    if (phi.grade() != x.grade()) throw std::invalid_argument("grade mismatch");
    S acc(0);
    for (size_t i = 0; i < phi.coeffs().size(); ++i) acc = acc + phi[i] * x[i];
    return acc;
}

template <typename S>
MultiVectorT<S> det_triple(const MultiVectorT<S>& t, const MultiVectorT<S>& u,
                           const MultiVectorT<S>& v) {
    return wedge(wedge(t, u), v);
}

using MultiVector = MultiVectorT<Rational>;
using DualVector = DualVectorT<Rational>;
using MultiVectorD = MultiVectorT<double>;
using DualVectorD = DualVectorT<double>;

// Grade-2 wedge of two integer vectors, as lattice coordinates.
inline std::vector<long long> wedge2_int(const std::vector<long long>& a,
                                         const std::vector<long long>& b) {
    int n = static_cast<int>(a.size());
    if (b.size() != a.size()) throw std::invalid_argument("dimension mismatch");
    std::vector<long long> out(static_cast<size_t>(basis_size(n, 2)), 0);
    size_t r = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out[r++] = a[i] * b[j] - a[j] * b[i];
    return out;
}

// Grade-3 wedge of three integer vectors: 3x3 minors over i<j<k.
inline std::vector<long long> wedge3_int(const std::vector<long long>& a,
                                         const std::vector<long long>& b,
                                         const std::vector<long long>& c) {
    int n = static_cast<int>(a.size());
    if (b.size() != a.size() || c.size() != a.size())
        throw std::invalid_argument("dimension mismatch");
    std::vector<long long> out(static_cast<size_t>(basis_size(n, 3)), 0);
    size_t r = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                out[r++] = a[i] * (b[j] * c[k] - b[k] * c[j]) -
                           a[j] * (b[i] * c[k] - b[k] * c[i]) +
                           a[k] * (b[i] * c[j] - b[j] * c[i]);
    return out;
}

// Grade-3 wedge of an integer vector with a grade-2 lattice element.
inline std::vector<long long> wedge1x2_int(const std::vector<long long>& t,
                                           const std::vector<long long>& eta) {
    int n = static_cast<int>(t.size());
    if (eta.size() != static_cast<size_t>(basis_size(n, 2)))
        throw std::invalid_argument("grade-2 coefficient count mismatch");
    std::vector<long long> out(static_cast<size_t>(basis_size(n, 3)), 0);
    for (int i = 0; i < n; ++i) {
        if (t[i] == 0) continue;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b) {
                long long coeff = eta[static_cast<size_t>(basis_rank(n, {a, b}))];
                if (coeff == 0 || i == a || i == b) continue;
                std::vector<int> merged;
                int sign = merge_sign({i}, {a, b}, merged);
                out[static_cast<size_t>(basis_rank(n, merged))] += sign * t[i] * coeff;
            }
    }
    return out;
}

} // namespace tori::exterior
