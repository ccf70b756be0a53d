#pragma once

#include <complex>
#include <random>
#include <vector>

#include "tori/exterior.hpp"
#include "tori/report.hpp"
#include "tori/scalar.hpp"

namespace tori::fell {

using cplx = std::complex<double>;

// The finite group (Z/N)^n standing in for R^n; every shift is exact.
struct Grid {
    int n;
    long long N;

    Grid(int n_, long long N_) : n(n_), N(N_) {
        if (n <= 0 || N < 2) throw std::invalid_argument("grid needs n >= 1 and N >= 2");
        points = 1;
        for (int i = 0; i < n; ++i) {
            points *= static_cast<size_t>(N);
            if (points > (1u << 24)) throw std::invalid_argument("grid too large");
        }
    }

    size_t points = 0;

    size_t index(const std::vector<long long>& x) const {
        size_t idx = 0;
        for (int i = 0; i < n; ++i) idx = idx * static_cast<size_t>(N) + wrap(x[static_cast<size_t>(i)]);
        return idx;
    }
    std::vector<long long> point(size_t idx) const {
        std::vector<long long> x(static_cast<size_t>(n));
        for (int i = n - 1; i >= 0; --i) {
            x[static_cast<size_t>(i)] = static_cast<long long>(idx % static_cast<size_t>(N));
            idx /= static_cast<size_t>(N);
        }
        return x;
    }
    size_t wrap(long long v) const { return static_cast<size_t>(((v % N) + N) % N); }

    bool operator==(const Grid& o) const { return n == o.n && N == o.N; }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

// chi(xi) = exp(2 pi i <m, xi> / N) on grade-3 lattice elements; m integral
// makes the phase well defined mod N in every grade-1 slot.
class GridTricharacter {
public:
    GridTricharacter(int n, long long N, std::vector<long long> m);
    static GridTricharacter trivial(int n, long long N) {
        return GridTricharacter(
            n, N, std::vector<long long>(static_cast<size_t>(exterior::basis_size(n, 3)), 0));
    }

    int n() const { return n_; }
    long long N() const { return N_; }
    const std::vector<long long>& m() const { return m_; }
    bool is_trivial() const;

    // Phase index p in [0,N) with chi = exp(2 pi i p / N), and the value.
    long long phase_index(const std::vector<long long>& t, const std::vector<long long>& u,
                          const std::vector<long long>& v) const;
    cplx value(const std::vector<long long>& t, const std::vector<long long>& u,
               const std::vector<long long>& v) const {
        return root(phase_index(t, u, v));
    }
    cplx root(long long p) const { return roots_[static_cast<size_t>(((p % N_) + N_) % N_)]; }
    Phase phase(const std::vector<long long>& t, const std::vector<long long>& u,
                const std::vector<long long>& v) const {
        return Phase(Rational(phase_index(t, u, v), N_));
    }

private:
    int n_;
    long long N_;
    std::vector<long long> m_;
    std::vector<cplx> roots_;  // precomputed Nth roots, for run-to-run determinism
};

// Complex table indexed by (t, s); the first coordinate parametrizes the
// fiber, a fiber is the slice f(t, .).
struct FellSection {
    Grid grid;
    std::vector<cplx> data;  // size points^2, index = idx(t) * points + idx(s)

    explicit FellSection(Grid g) : grid(g), data(g.points * g.points, cplx(0, 0)) {}

    cplx& at(size_t t, size_t s) { return data[t * grid.points + s]; }
    const cplx& at(size_t t, size_t s) const { return data[t * grid.points + s]; }
    cplx& at(const std::vector<long long>& t, const std::vector<long long>& s) {
        return data[grid.index(t) * grid.points + grid.index(s)];
    }

    static FellSection delta(Grid g, const std::vector<long long>& t,
                             const std::vector<long long>& s, cplx value = cplx(1, 0)) {
        FellSection f(g);
        f.at(t, s) = value;
        return f;
    }

    double max_abs() const;
    double max_diff(const FellSection& o) const;
    // The single fiber carrying all mass, if the section is homogeneous.
    std::optional<size_t> homogeneous_fiber(double tol = 0.0) const;
};

struct Kernel {
    Grid grid;
    std::vector<cplx> data;  // K(x, y), index = idx(x) * points + idx(y)

    explicit Kernel(Grid g) : grid(g), data(g.points * g.points, cplx(0, 0)) {}
    cplx& at(size_t x, size_t y) { return data[x * grid.points + y]; }
    const cplx& at(size_t x, size_t y) const { return data[x * grid.points + y]; }
    double max_diff(const Kernel& o) const;
};

// Multiplication of two fiber slices at t1, t2:
//   out(s) = chi(t1 ^ t2 ^ s) h1(s + t2) h2(s), landing at fiber t1 + t2.
std::vector<cplx> fiber_mult(const Grid& g, const std::vector<long long>& t1,
                             const std::vector<long long>& t2, const std::vector<cplx>& h1,
                             const std::vector<cplx>& h2, const GridTricharacter& chi);

// (f * g)(t,s) = sum_r chi(r ^ t ^ s) f(r, s+t-r) g(t-r, s); the sum runs
// over the grid in lexicographic order of r.
FellSection convolve(const FellSection& f, const FellSection& g, const GridTricharacter& chi);

// f*(t,s) = conj f(-t, s+t)
FellSection involute(const FellSection& f);

// Phi(K)(x,y) = K(x+y, y) and its inverse.
FellSection phi(const Kernel& K);
Kernel phi_inv(const FellSection& f);

// K3(x,y) = sum_r chi(x ^ r ^ y) K1(x,r) K2(r,y)
Kernel kernel_mult(const Kernel& K1, const Kernel& K2, const GridTricharacter& chi);

// K*(x,y) = conj K(y,x)
Kernel kernel_adjoint(const Kernel& K);

double hs_norm(const FellSection& f);
// The same norm through (f* . f)(0, s); used to cross-check the direct sum.
double hs_norm_via_convolution(const FellSection& f, const GridTricharacter& chi);

// Orientation of the associator, pinned by the delta-triple oracle: the
// ratio f.(g.h) / (f.g).h equals chi(t^u^v)^sigma.
inline constexpr int kAssociatorOrientation = -1;

struct AssociatorDefect {
    Phase defect;              // the constant ratio f.(g.h) / (f.g).h
    Phase chi_value;           // chi(t ^ u ^ v)
    Phase chi_inverse;         // chi(t ^ u ^ v)^{-1}
    double constancy_residual; // max deviation of the entrywise ratio
};

// The constant phase rho with f.(g.h) = rho ((f.g).h) for sections
// supported on single fibers.  Throws if a product vanishes or the ratio
// is not constant.
AssociatorDefect associator_defect(const FellSection& f, const FellSection& g,
                                   const FellSection& h, const GridTricharacter& chi,
                                   double tol = 1e-9);

struct AxiomOptions {
    int samples = 50;
    bool corrupt_fiber_phase = false;  // negative control for the axiom suite
    unsigned long long seed = 1;
};

// Numeric verification of the action axioms on the discrete model: unit
// fibers and unit laws, additivity of the scalar phases, compatibility of
// scalars with the fiber product, and the associator law.
CheckReport check_action_axioms(const GridTricharacter& chi, const AxiomOptions& opts = {});

// Random sections: entries are small Gaussian integers when integral is
// set (all arithmetic then stays exact for N = 4), otherwise uniform
// complex numbers.
FellSection random_section(Grid g, std::mt19937_64& rng, bool integral = false);
FellSection random_homogeneous(Grid g, const std::vector<long long>& fiber, std::mt19937_64& rng,
                               bool integral = false);

json section_to_json(const FellSection& f);
FellSection section_from_json(const json& j);

} // namespace tori::fell
