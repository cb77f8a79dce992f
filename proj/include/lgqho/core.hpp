#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace lgqho {

/// Center of a gaussian coherent state in dimensionless phase space.
struct CoherentState {
    double x0 = 0.0;
    double p0 = 0.0;

    std::complex<double> alpha() const;
};

/// Selects the OpenMP kernel or the serial reference kernel for grid-shaped work.
enum class Execution { serial, parallel };

/// Thread count for Execution::parallel; 0 leaves the OpenMP default.
void set_parallelism(int threads);
int parallelism();

struct PhasePoint {
    double x = 0.0;
    double p = 0.0;
};

/// Classical oscillator path through (x0, p0) at phase θ = ωt.
PhasePoint classical_trajectory(const CoherentState& state, double theta);

void require_finite(const CoherentState& state);
void require_sign(int s);

/// Normalised oscillator eigenfunctions ψ_0..ψ_nmax via the three-term recurrence.
/// Immutable after construction; share freely between threads.
class Eigenbasis {
public:
    explicit Eigenbasis(int n_max = 200);

    int n_max() const { return n_max_; }

    /// Writes ψ_0(x)..ψ_{count-1}(x); count ≤ n_max + 1.
    void values(double x, int count, double* out) const;
    std::vector<double> values(double x, int count) const;

    /// (ψ_n(x), ψ_n'(x))
    std::pair<double, double> eigenfunction(int n, double x) const;

    /// ∫_a^∞ ψ_m ψ_n dx
    double overlap_halfline(int m, int n, double a) const;

    /// ∫_a^∞ ψ_n ψ_k dx for all k < count, written to out.
    void overlap_row(int n, double a, int count, double* out) const;

    /// Process-wide instance large enough for the adaptive series.
    static const Eigenbasis& shared();

private:
    void check_index(int n) const;

    int n_max_;
    std::vector<double> up_;    // sqrt(2/(k+1))
    std::vector<double> down_;  // sqrt(k/(k+1))
};

/// Streams ψ_0(x), ψ_1(x), ... one value at a time.
class HermiteStream {
public:
    explicit HermiteStream(double x);
    /// Value of ψ_n for the current n, then advances.
    double next();
    int index() const { return n_; }

private:
    double x_;
    double prev_ = 0.0;
    double cur_;
    int n_ = 0;
};

}  // namespace lgqho
