#ifndef WAVESPLIT_CORE_HPP
#define WAVESPLIT_CORE_HPP

// Units, grids, Gaussian trap potentials and wavefunction algebra.
// All computation is in natural units hbar = M = omega = 1; SI values
// are produced only for reports via to_si().

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "wavesplit/errors.hpp"

namespace wavesplit {

using cplx = std::complex<double>;

struct UnitsConvention {
    // hbar = M = omega = 1 internally; these are only for SI reports.
    std::optional<double> si_mass;   // kg
    std::optional<double> si_omega;  // rad/s
};

enum class SiKind { Length, Time, Velocity, Energy };

double to_si(double value, SiKind kind, const UnitsConvention& u);

// Cell-centered symmetric grid: z_j = -z_max + (j + 1/2) dz, dz = 2 z_max / n.
// No point sits at z = 0, so reflection z -> -z is the exact index
// permutation j <-> n-1-j.
class Grid {
public:
    Grid(double z_max, std::size_t n);

    double z_max() const { return z_max_; }
    std::size_t n() const { return n_; }
    double dz() const { return dz_; }
    // Offset from the center, not from -z_max: z(n-1-j) == -z(j) exactly.
    double z(std::size_t j) const {
        return (static_cast<double>(j) + 0.5 - 0.5 * static_cast<double>(n_)) * dz_;
    }
    const std::vector<double>& points() const { return points_; }

    bool operator==(const Grid& other) const {
        return z_max_ == other.z_max_ && n_ == other.n_;
    }

private:
    double z_max_;
    std::size_t n_;
    double dz_;
    std::vector<double> points_;
};

struct TrapParams {
    double sigma = 1.0;
    double depth = 1.0;  // default M omega^2 sigma^2 = sigma^2 in natural units

    static TrapParams with_default_depth(double sigma) {
        return TrapParams{sigma, sigma * sigma};
    }
};

struct PotentialSamples {
    std::vector<double> values;  // energy units, length grid.n
    const Grid* grid = nullptr;
    double separation = 0.0;  // d, for double traps
};

class Wavefunction {
public:
    Wavefunction(const Grid& grid, std::vector<cplx> amplitudes);

    const Grid& grid() const { return *grid_; }
    const std::vector<cplx>& amplitudes() const { return amp_; }
    std::vector<cplx>& amplitudes() { return amp_; }

    std::size_t size() const { return amp_.size(); }
    double norm_sq() const;
    double norm() const;
    void normalize();

private:
    const Grid* grid_;
    std::vector<cplx> amp_;
};

PotentialSamples sample_single_trap(const Grid& grid, const TrapParams& p, double center);

// V2(z, d) = V(z - d/2) + V(z + d/2), symmetrized so that reflection
// j <-> n-1-j is bit-exact.
PotentialSamples sample_double_trap(const Grid& grid, const TrapParams& p, double d);

// Separation at which the two minima merge into one: d = 2 sigma.
double critical_separation(const TrapParams& p);

// Strict interior local minima; plateau ties count as one minimum.
// Requires dz < sigma/10 of the effective width (passed explicitly).
std::size_t count_minima(const PotentialSamples& samples, double sigma);

cplx inner_product(const Wavefunction& a, const Wavefunction& b);

Wavefunction reflect(const Wavefunction& psi);

struct ParityWeights {
    double even;
    double odd;
};

ParityWeights parity_weights(const Wavefunction& psi);

double expectation_z(const Wavefunction& psi);

// probability mass within the outermost `margin` cells on each side
double edge_amplitude(const Wavefunction& psi, std::size_t margin = 3);

}  // namespace wavesplit

#endif
