#ifndef WAVESPLIT_PROPAGATE_HPP
#define WAVESPLIT_PROPAGATE_HPP

// Time-dependent Schrodinger evolution with two interchangeable unitary
// steppers: Strang split-operator (spectral kinetic factor) and
// Crank-Nicolson (tridiagonal, Dirichlet walls). The potential is sampled
// at interval midpoints, keeping both methods second order for
// time-dependent potentials.

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "wavesplit/core.hpp"

namespace wavesplit {

enum class PropagationMethod { SplitOperator, CrankNicolson };

struct PropagationConfig {
    double dt = 1e-3;
    PropagationMethod method = PropagationMethod::SplitOperator;
    std::size_t observe_every = 200;
    bool record_density = false;
    double edge_tolerance = 1e-6;  // EdgeLeakage threshold
};

struct TrajectoryRecord {
    double t = 0.0;
    double norm = 0.0;
    double mean_z = 0.0;
    double parity_even_weight = 0.0;
    std::optional<std::vector<double>> density_snapshot;
};

// One-shot steps against a frozen midpoint potential. Scratch (FFT plans,
// tridiagonal workspaces) is owned per-stepper; a stepper is bound to the
// grid it was created with.
class SplitOperatorStepper {
public:
    explicit SplitOperatorStepper(const Grid& grid);
    ~SplitOperatorStepper();
    SplitOperatorStepper(SplitOperatorStepper&&) noexcept;
    SplitOperatorStepper& operator=(SplitOperatorStepper&&) noexcept;

    void step(Wavefunction& psi, const PotentialSamples& v_mid, double dt);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

class CrankNicolsonStepper {
public:
    explicit CrankNicolsonStepper(const Grid& grid);

    void step(Wavefunction& psi, const PotentialSamples& v_mid, double dt);

private:
    const Grid* grid_;
    std::vector<cplx> rhs_, work_a_, work_b_, work_c_;
};

Wavefunction step_split_operator(const Wavefunction& psi, const PotentialSamples& v_mid,
                                 double dt);
Wavefunction step_crank_nicolson(const Wavefunction& psi, const PotentialSamples& v_mid,
                                 double dt);

using PotentialPath = std::function<PotentialSamples(double)>;

struct PropagationResult {
    Wavefunction psi;
    std::vector<TrajectoryRecord> trajectory;
};

PropagationResult propagate(const Wavefunction& psi0, const PotentialPath& potential_at,
                            double t0, double t1, const PropagationConfig& cfg);

}  // namespace wavesplit

#endif
