#pragma once

#include <map>
#include <string>
#include <vector>

#include "tori/exterior.hpp"
#include "tori/json_io.hpp"
#include "tori/report.hpp"
#include "tori/scalar.hpp"

namespace tori::cohomology {

using LatticeVec = std::vector<long long>;

inline constexpr long long kDefaultBox = 4;

// n x n matrix of phases that is antisymmetric mod 1 (diagonal zero).
// This is the complete invariant of circle-valued 2-cocycles on Z^n.
class PhaseMatrix {
public:
    PhaseMatrix() = default;
    explicit PhaseMatrix(int n) : n_(n), entries_(static_cast<size_t>(n) * n) {}
    PhaseMatrix(int n, std::vector<Phase> entries, bool validate_antisym);

    static PhaseMatrix zero(int n) { return PhaseMatrix(n); }

    int n() const { return n_; }
    const Phase& at(int i, int j) const { return entries_[static_cast<size_t>(i) * n_ + j]; }
    void set(int i, int j, Phase p) { entries_[static_cast<size_t>(i) * n_ + j] = p; }

    // Sets entry (i,j) for i<j and (j,i) to its negative.
    void set_pair(int i, int j, Phase p) {
        set(i, j, p);
        set(j, i, -p);
    }

    bool is_antisymmetric(double tol = kFloatTol) const;
    bool equals(const PhaseMatrix& o, double tol = kFloatTol) const;
    bool is_zero(double tol = kFloatTol) const;

    PhaseMatrix operator+(const PhaseMatrix& o) const;
    PhaseMatrix operator-() const;

    // The independent entries (i<j) in lexicographic order; length C(n,2).
    std::vector<Phase> upper_entries() const;

    json to_json() const;
    static PhaseMatrix from_json(const json& j, Mode mode);

private:
    int n_ = 0;
    std::vector<Phase> entries_;
};

// A normalized circle-valued 2-cochain table on a box [-B,B]^n.
class PhaseTable {
public:
    PhaseTable(int n, long long box);

    int n() const { return n_; }
    long long box() const { return box_; }
    long long points() const { return points_; }

    bool in_box(const LatticeVec& k) const;
    long long index(const LatticeVec& k) const;  // throws if out of box
    LatticeVec point(long long idx) const;

protected:
    int n_;
    long long box_;
    long long side_;
    long long points_;
};

// Phase-valued map V on Z^n sampled on a box, used to form coboundaries.
class PhaseMap : public PhaseTable {
public:
    PhaseMap(int n, long long box) : PhaseTable(n, box), values_(static_cast<size_t>(points_)) {}

    Phase at(const LatticeVec& k) const { return values_[static_cast<size_t>(index(k))]; }
    void set(const LatticeVec& k, Phase p) { values_[static_cast<size_t>(index(k))] = p; }
    const std::vector<Phase>& values() const { return values_; }

private:
    std::vector<Phase> values_;
};

// A circle-valued 2-cocycle on Z^n: either in standard form, defined by a
// strictly upper-triangular phase matrix via w(k,l) = exp(2 pi i k^T Th l),
// or an explicit table on a declared box.  Table lookups outside the box
// fail loudly.
class Cocycle2 {
public:
    static Cocycle2 trivial(int n);
    static Cocycle2 standard(int n, std::vector<std::vector<Phase>> theta_hat);
    static Cocycle2 table(int n, long long box, std::vector<Phase> values);

    int n() const { return n_; }
    bool is_standard() const { return standard_; }
    long long box() const { return box_; }  // meaningful for table form

    // Phase of w(k, l); exp(2 pi i .) gives the circle value.
    Phase at(const LatticeVec& k, const LatticeVec& l) const;

    const std::vector<std::vector<Phase>>& theta_hat() const { return theta_hat_; }

    // Pointwise product of cocycles.  Standard x standard stays standard;
    // anything involving a table lands on the smaller box.
    friend Cocycle2 operator*(const Cocycle2& a, const Cocycle2& b);

    json to_json() const;
    static Cocycle2 from_json(const json& j, Mode mode);

private:
    Cocycle2() = default;
    int n_ = 0;
    bool standard_ = true;
    std::vector<std::vector<Phase>> theta_hat_;  // strictly upper triangular
    long long box_ = 0;
    std::vector<Phase> values_;  // row-major over (k index, l index)
    long long table_index(const LatticeVec& k, const LatticeVec& l) const;
};

// A homomorphism from the grade-3 exterior power to the circle, given by a
// real coefficient vector c over the lexicographic grade-3 basis:
// U(xi) = exp(2 pi i <c, xi>).  Integral c is exactly the case where U is
// trivial on the grade-3 integer lattice.
class Tricharacter {
public:
    Tricharacter(int n, std::vector<Scalar> c);
    static Tricharacter trivial(int n);
    static Tricharacter from_integral(int n, const std::vector<long long>& m);

    int n() const { return n_; }
    const std::vector<Scalar>& c() const { return c_; }
    bool is_integral(double tol = kFloatTol) const;
    std::vector<long long> integral_coeffs(double tol = kFloatTol) const;  // throws if not integral

    Phase eval_lattice(const LatticeVec& xi) const;  // xi over grade-3 basis
    Phase eval(const exterior::MultiVector& xi) const;
    Scalar pair_lattice(const LatticeVec& xi) const;  // <c, xi> without mod 1

    friend Tricharacter operator*(const Tricharacter& a, const Tricharacter& b);

    json to_json() const;
    static Tricharacter from_json(const json& j, Mode mode);

private:
    int n_;
    std::vector<Scalar> c_;
};

// Finite data model for a continuous-cohomology class: one dual vector of
// a fixed grade per base point.
class ObstructionFunction {
public:
    ObstructionFunction(int n, int grade) : n_(n), grade_(grade) {}

    int n() const { return n_; }
    int grade() const { return grade_; }
    void set(const std::string& point, std::vector<Scalar> value);
    const std::vector<Scalar>& at(const std::string& point) const;  // throws on unknown point
    const std::map<std::string, std::vector<Scalar>>& points() const { return values_; }
    bool vanishes(double tol = kFloatTol) const;

    json to_json() const;
    static ObstructionFunction from_json(const json& j, Mode mode);

private:
    int n_;
    int grade_;
    std::map<std::string, std::vector<Scalar>> values_;
};

// d V(k,l) = V(k) + V(l) - V(k+l) as phases, tabulated on the requested
// output box.  V must be sampled on a box at least twice as large.
Cocycle2 coboundary1(const PhaseMap& V, long long out_box);

// Phase of  w(k+l,m) w(k,l) U(k^l^m) / ( w(k,l+m) w(l,m) ).
Phase cocycle_defect(const Cocycle2& omega, const Tricharacter& U, const LatticeVec& k,
                     const LatticeVec& l, const LatticeVec& m);

// The antisymmetric pairing Theta_ij = phase of w(e_i,e_j) w(e_j,e_i)^{-1}.
PhaseMatrix commutator_pairing(const Cocycle2& omega);

bool cohomologous(const Cocycle2& a, const Cocycle2& b, double tol = kFloatTol);

// Canonical representative: standard form with the strict upper triangle
// of an antisymmetric phase matrix.
Cocycle2 standard_cocycle(const PhaseMatrix& theta);

// Value of the group cocycle induced by an obstruction function:
// <chi(p), t_1 ^ ... ^ t_g>.
Scalar cocycle_from_obstruction(const ObstructionFunction& chi,
                                const std::vector<exterior::MultiVector>& ts,
                                const std::string& point);
Scalar cocycle_from_obstruction_d(const ObstructionFunction& chi,
                                  const std::vector<exterior::MultiVectorD>& ts,
                                  const std::string& point);

} // namespace tori::cohomology
