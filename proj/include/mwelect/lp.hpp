#pragma once

#include <string>
#include <vector>

#include "mwelect/profile.hpp"
#include "mwelect/symmetric.hpp"

namespace mwelect {

// Sparse linear program: min c'x subject to typed rows, 0 <= x_j <= upper_j.
struct LpModel {
    enum class Sense { Eq, Le, Ge };
    struct Row {
        std::vector<std::pair<int, double>> coeffs;
        Sense sense = Sense::Le;
        double rhs = 0;
    };
    int num_vars = 0;
    std::vector<double> objective;
    std::vector<double> upper;  // per-variable upper bound (infinity() for none)
    std::vector<Row> rows;
    std::vector<std::string> var_names;

    // profile-shaped bookkeeping
    int m = 0, k = 0, s = 0, num_agents = 0;
};

struct LpSolution {
    std::vector<double> x;
    double objective = 0;
    int iterations = 0;
};

// Contract for pluggable solvers: primal feasibility within 1e-7 absolute per
// constraint, objective within 1e-6 relative of optimal, deterministic
// pivoting.
class LpSolverContract {
  public:
    virtual ~LpSolverContract() = default;
    virtual LpSolution solve(const LpModel& model) const = 0;
};

// Bundled dense-tableau two-phase simplex with Bland's rule.
class DenseSimplexSolver : public LpSolverContract {
  public:
    explicit DenseSimplexSolver(long long max_iterations = 2000000)
        : max_iterations_(max_iterations) {}
    LpSolution solve(const LpModel& model) const override;

  private:
    long long max_iterations_;
};

struct FractionalSolution {
    std::vector<double> y;       // per-candidate mass
    double objective = 0;        // model convention: weight-summed, not averaged
    double objective_mean = 0;   // per unit voter weight
};

// Relaxation with variables y_j and x_{i,j,l}, l = 1..s: minimize the total
// assigned rank subject to sum(y) = k, per-candidate capacity and one unit of
// assignment per voter copy.
LpModel build_lp(const PreferenceProfile& profile, int k, int s);

FractionalSolution solve_lp(const LpModel& model, const LpSolverContract& solver);

// Structure-exploiting solve of the same relaxation: assignment variables are
// eliminated through the rank-prefix rule and y is optimized by cutting
// planes over the exact per-voter cost epigraph (masters solved with the
// dense simplex). Produces the same optimum as solve_lp on build_lp models
// and scales to symmetric instances where the full tableau would not fit.
FractionalSolution solve_relaxation(const PreferenceProfile& profile, int k, int s);
FractionalSolution solve_relaxation(const SymmetricProfile& sp, int k, int s);

// LP text export for external-solver cross-checks.
std::string lp_model_to_text(const LpModel& model);

}  // namespace mwelect
