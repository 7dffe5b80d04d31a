#include "mwelect/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mwelect/errors.hpp"
#include "mwelect/scoring.hpp"

namespace mwelect {

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Tableau {
    int rows = 0, cols = 0;      // constraint rows, variable columns
    std::vector<double> data;    // (rows+1) x (cols+1); last row costs, last col rhs
    std::vector<int> basis;

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * (cols + 1) + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * (cols + 1) + c]; }

    void pivot(int pr, int pc) {
        double piv = at(pr, pc);
        for (int c = 0; c <= cols; ++c) at(pr, c) /= piv;
        for (int r = 0; r <= rows; ++r) {
            if (r == pr) continue;
            double f = at(r, pc);
            if (f == 0.0) continue;
            for (int c = 0; c <= cols; ++c) at(r, c) -= f * at(pr, c);
        }
        basis[pr] = pc;
    }
};

// Bland's rule iteration on a canonical tableau. `allowed` masks columns that
// may enter. Returns iterations used; throws on the iteration cap.
long long run_simplex(Tableau& t, const std::vector<bool>& allowed, long long max_iter) {
    long long it = 0;
    while (true) {
        int enter = -1;
        for (int c = 0; c < t.cols; ++c) {
            if (!allowed[c]) continue;
            if (t.at(t.rows, c) < -kEps) {
                enter = c;
                break;
            }
        }
        if (enter < 0) return it;
        int leave = -1;
        double best = 0;
        for (int r = 0; r < t.rows; ++r) {
            double a = t.at(r, enter);
            if (a > kEps) {
                double ratio = t.at(r, t.cols) / a;
                if (leave < 0 || ratio < best - kEps ||
                    (ratio < best + kEps && t.basis[r] < t.basis[leave])) {
                    leave = r;
                    best = ratio;
                }
            }
        }
        if (leave < 0) throw ArgError("linear program is unbounded");
        t.pivot(leave, enter);
        if (++it > max_iter) throw CapError("simplex iteration limit reached");
    }
}

}  // namespace

LpSolution DenseSimplexSolver::solve(const LpModel& model) const {
    const int n = model.num_vars;
    struct StdRow {
        std::vector<std::pair<int, double>> coeffs;
        LpModel::Sense sense;
        double rhs;
    };
    std::vector<StdRow> rows;
    for (const auto& r : model.rows) rows.push_back({r.coeffs, r.sense, r.rhs});
    for (int j = 0; j < n; ++j) {
        if (model.upper[j] < kInf)
            rows.push_back({{{j, 1.0}}, LpModel::Sense::Le, model.upper[j]});
    }
    const int R = static_cast<int>(rows.size());

    // Columns: structurals, then slack/surplus per Le/Ge row, then artificials
    // for Ge/Eq rows.
    int num_slack = 0, num_art = 0;
    for (auto& r : rows) {
        if (r.rhs < 0) {
            for (auto& cv : r.coeffs) cv.second = -cv.second;
            r.rhs = -r.rhs;
            if (r.sense == LpModel::Sense::Le)
                r.sense = LpModel::Sense::Ge;
            else if (r.sense == LpModel::Sense::Ge)
                r.sense = LpModel::Sense::Le;
        }
        if (r.sense != LpModel::Sense::Eq) ++num_slack;
        if (r.sense != LpModel::Sense::Le) ++num_art;
    }
    const int C = n + num_slack + num_art;
    Tableau t;
    t.rows = R;
    t.cols = C;
    t.data.assign(static_cast<std::size_t>(R + 1) * (C + 1), 0.0);
    t.basis.assign(R, -1);

    std::vector<bool> artificial(C, false);
    int slack_at = n, art_at = n + num_slack;
    for (int r = 0; r < R; ++r) {
        for (const auto& [j, v] : rows[r].coeffs) t.at(r, j) += v;
        t.at(r, C) = rows[r].rhs;
        if (rows[r].sense == LpModel::Sense::Le) {
            t.at(r, slack_at) = 1.0;
            t.basis[r] = slack_at++;
        } else if (rows[r].sense == LpModel::Sense::Ge) {
            t.at(r, slack_at) = -1.0;
            ++slack_at;
            t.at(r, art_at) = 1.0;
            artificial[art_at] = true;
            t.basis[r] = art_at++;
        } else {
            t.at(r, art_at) = 1.0;
            artificial[art_at] = true;
            t.basis[r] = art_at++;
        }
    }

    long long iters = 0;
    std::vector<bool> allowed(C, true);
    if (num_art > 0) {
        // Phase 1: minimize the artificial sum.
        for (int c = 0; c <= C; ++c) t.at(R, c) = 0.0;
        for (int c = 0; c < C; ++c)
            if (artificial[c]) t.at(R, c) = 1.0;
        for (int r = 0; r < R; ++r) {
            if (artificial[t.basis[r]])
                for (int c = 0; c <= C; ++c) t.at(R, c) -= t.at(r, c);
        }
        iters += run_simplex(t, allowed, max_iterations_);
        double infeas = -t.at(R, C);
        if (infeas > 1e-7) throw ArgError("linear program infeasible");
        // Pivot leftover artificials out of the basis where possible.
        for (int r = 0; r < R; ++r) {
            if (!artificial[t.basis[r]]) continue;
            int pc = -1;
            for (int c = 0; c < C; ++c) {
                if (artificial[c]) continue;
                if (std::abs(t.at(r, c)) > 1e-7) {
                    pc = c;
                    break;
                }
            }
            if (pc >= 0) t.pivot(r, pc);
            // else the row is redundant; the artificial stays basic at zero
        }
    }

    // Phase 2.
    for (int c = 0; c < C; ++c) {
        allowed[c] = !artificial[c];
        t.at(R, c) = (c < n) ? model.objective[c] : 0.0;
    }
    t.at(R, C) = 0.0;
    for (int r = 0; r < R; ++r) {
        int b = t.basis[r];
        double cb = (b < n) ? model.objective[b] : 0.0;
        if (cb != 0.0)
            for (int c = 0; c <= C; ++c) t.at(R, c) -= cb * t.at(r, c);
    }
    iters += run_simplex(t, allowed, max_iterations_);

    LpSolution sol;
    sol.x.assign(n, 0.0);
    for (int r = 0; r < R; ++r)
        if (t.basis[r] < n) sol.x[t.basis[r]] = t.at(r, C);
    sol.objective = 0;
    for (int j = 0; j < n; ++j) sol.objective += model.objective[j] * sol.x[j];
    sol.iterations = static_cast<int>(iters);
    return sol;
}

// --------------------------------------------------------------------------
// Model construction
// --------------------------------------------------------------------------

LpModel build_lp(const PreferenceProfile& profile, int k, int s) {
    profile.validate();
    const int m = profile.m, n = profile.num_voters();
    if (k < 1 || k > m) throw ArgError("k must satisfy 1 <= k <= m");
    if (s < 1 || s > k) throw ArgError("s must satisfy 1 <= s <= k");

    LpModel md;
    md.m = m;
    md.k = k;
    md.s = s;
    md.num_agents = n;
    md.num_vars = m + n * m * s;
    md.objective.assign(md.num_vars, 0.0);
    md.upper.assign(md.num_vars, 1.0);
    md.var_names.reserve(md.num_vars);
    for (int j = 0; j < m; ++j) md.var_names.push_back("y" + std::to_string(j));
    auto xidx = [&](int i, int j, int l) { return m + (i * m + j) * s + l; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j)
            for (int l = 0; l < s; ++l)
                md.var_names.push_back("x_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                       std::to_string(l + 1));

    for (int i = 0; i < n; ++i) {
        double w = profile.weight_of(i).to_double();
        for (int j = 0; j < m; ++j) {
            double r = profile.voters[i].rank_of(j);
            for (int l = 0; l < s; ++l) md.objective[xidx(i, j, l)] = w * r;
        }
    }

    LpModel::Row sum_row;
    sum_row.sense = LpModel::Sense::Eq;
    sum_row.rhs = k;
    for (int j = 0; j < m; ++j) sum_row.coeffs.push_back({j, 1.0});
    md.rows.push_back(std::move(sum_row));

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < m; ++j) {
            LpModel::Row cap;
            cap.sense = LpModel::Sense::Le;
            cap.rhs = 0;
            for (int l = 0; l < s; ++l) cap.coeffs.push_back({xidx(i, j, l), 1.0});
            cap.coeffs.push_back({j, -1.0});
            md.rows.push_back(std::move(cap));
        }
        for (int l = 0; l < s; ++l) {
            LpModel::Row cover;
            cover.sense = LpModel::Sense::Ge;
            cover.rhs = 1;
            for (int j = 0; j < m; ++j) cover.coeffs.push_back({xidx(i, j, l), 1.0});
            md.rows.push_back(std::move(cover));
        }
    }
    return md;
}

FractionalSolution solve_lp(const LpModel& model, const LpSolverContract& solver) {
    LpSolution sol = solver.solve(model);
    // Contract enforcement: feasibility within 1e-7 per constraint.
    for (const auto& row : model.rows) {
        double lhs = 0;
        for (const auto& [j, v] : row.coeffs) lhs += v * sol.x[j];
        double viol = 0;
        if (row.sense == LpModel::Sense::Eq) viol = std::abs(lhs - row.rhs);
        if (row.sense == LpModel::Sense::Le) viol = lhs - row.rhs;
        if (row.sense == LpModel::Sense::Ge) viol = row.rhs - lhs;
        if (viol > 1e-7) throw ArgError("solver returned an infeasible point");
    }
    FractionalSolution fs;
    fs.y.assign(sol.x.begin(), sol.x.begin() + model.m);
    fs.objective = sol.objective;
    double wtot = model.num_agents;  // voter weights are folded into the objective
    fs.objective_mean = wtot > 0 ? sol.objective / wtot : sol.objective;
    return fs;
}

// --------------------------------------------------------------------------
// Prefix-rule reduction with cutting planes
// --------------------------------------------------------------------------

namespace {

struct ReductionAgent {
    double weight = 1.0;
    std::vector<std::pair<RankValue, int>> items;  // (rank ascending, y-var)
};

struct ReductionProblem {
    int num_y = 0;
    std::vector<double> mult;  // multiplicity of each y var in the sum row
    std::vector<ReductionAgent> agents;
    int k = 0, s = 0;
    double weight_total = 0;
    std::vector<std::vector<int>> expand;  // y var -> candidate ids
};

// Exact prefix cost at y, plus the rank where the s units fill up (the tight
// epigraph breakpoint).
double agent_cost(const ReductionAgent& ag, const std::vector<double>& y, int s,
                  RankValue& alpha_out) {
    double acc = 0, cost = 0;
    for (const auto& [r, v] : ag.items) {
        double take = std::min(std::max(y[v], 0.0), static_cast<double>(s) - acc);
        if (take > 0) {
            cost += take * r;
            acc += take;
        }
        if (acc >= s - 1e-12) {
            alpha_out = r;
            return cost;
        }
    }
    alpha_out = ag.items.back().first + 1;
    cost += (s - acc) * alpha_out;
    return cost;
}

FractionalSolution solve_reduction(const ReductionProblem& rp) {
    const int ny = rp.num_y;
    const int na = static_cast<int>(rp.agents.size());
    const int s = rp.s;

    std::vector<std::vector<RankValue>> cuts(na);

    double total_mult = 0;
    for (double mu : rp.mult) total_mult += mu;
    std::vector<double> y0(ny, std::min(1.0, rp.k / total_mult));
    RankValue alpha;
    for (int g = 0; g < na; ++g) {
        agent_cost(rp.agents[g], y0, s, alpha);
        cuts[g].push_back(alpha);
    }

    DenseSimplexSolver master_solver;
    double best_ub = kInf;
    std::vector<double> best_y = y0;
    for (int round = 0; round < 300; ++round) {
        LpModel master;
        master.num_vars = ny + na;
        master.objective.assign(master.num_vars, 0.0);
        master.upper.assign(master.num_vars, kInf);
        for (int j = 0; j < ny; ++j) master.upper[j] = 1.0;
        for (int g = 0; g < na; ++g) master.objective[ny + g] = rp.agents[g].weight;
        LpModel::Row sum_row;
        sum_row.sense = LpModel::Sense::Eq;
        sum_row.rhs = rp.k;
        for (int j = 0; j < ny; ++j) sum_row.coeffs.push_back({j, rp.mult[j]});
        master.rows.push_back(std::move(sum_row));
        for (int g = 0; g < na; ++g) {
            for (RankValue a : cuts[g]) {
                // t_g + sum_j (a - r_j)+ y_j >= s*a
                LpModel::Row cut;
                cut.sense = LpModel::Sense::Ge;
                cut.rhs = static_cast<double>(s) * a;
                std::vector<double> coef(ny, 0.0);
                for (const auto& [r, v] : rp.agents[g].items)
                    if (r < a) coef[v] += a - r;
                for (int j = 0; j < ny; ++j)
                    if (coef[j] != 0.0) cut.coeffs.push_back({j, coef[j]});
                cut.coeffs.push_back({ny + g, 1.0});
                master.rows.push_back(std::move(cut));
            }
        }
        LpSolution sol = master_solver.solve(master);
        double lb = sol.objective;
        std::vector<double> y(sol.x.begin(), sol.x.begin() + ny);
        double ub = 0;
        bool added = false;
        for (int g = 0; g < na; ++g) {
            double c = agent_cost(rp.agents[g], y, s, alpha);
            ub += rp.agents[g].weight * c;
            if (c > sol.x[ny + g] + 1e-9 &&
                std::find(cuts[g].begin(), cuts[g].end(), alpha) == cuts[g].end()) {
                cuts[g].push_back(alpha);
                added = true;
            }
        }
        if (ub < best_ub) {
            best_ub = ub;
            best_y = y;
        }
        if (best_ub - lb <= 1e-9 * std::max(1.0, std::abs(best_ub)) || !added) break;
    }

    FractionalSolution fs;
    fs.objective = best_ub;
    fs.objective_mean = rp.weight_total > 0 ? best_ub / rp.weight_total : best_ub;
    int total_candidates = 0;
    for (const auto& ids : rp.expand) total_candidates += static_cast<int>(ids.size());
    fs.y.assign(total_candidates, 0.0);
    for (int j = 0; j < ny; ++j)
        for (int c : rp.expand[j]) fs.y[c] = best_y[j];
    return fs;
}

}  // namespace

FractionalSolution solve_relaxation(const PreferenceProfile& profile, int k, int s) {
    profile.validate();
    const int m = profile.m;
    if (k < 1 || k > m) throw ArgError("k must satisfy 1 <= k <= m");
    if (s < 1 || s > k) throw ArgError("s must satisfy 1 <= s <= k");
    ReductionProblem rp;
    rp.num_y = m;
    rp.mult.assign(m, 1.0);
    rp.k = k;
    rp.s = s;
    rp.expand.resize(m);
    for (int j = 0; j < m; ++j) rp.expand[j] = {j};
    rp.weight_total = 0;
    for (int v = 0; v < profile.num_voters(); ++v) {
        ReductionAgent ag;
        ag.weight = profile.weight_of(v).to_double();
        rp.weight_total += ag.weight;
        for (RankValue r = 1; r <= m; ++r)
            ag.items.push_back({r, profile.voters[v].candidate_at(r)});
        rp.agents.push_back(std::move(ag));
    }
    return solve_reduction(rp);
}

FractionalSolution solve_relaxation(const SymmetricProfile& sp, int k, int s) {
    sp.validate();
    const int m = sp.m;
    if (k < 1 || k > m) throw ArgError("k must satisfy 1 <= k <= m");
    if (s < 1 || s > k) throw ArgError("s must satisfy 1 <= s <= k");
    const int K = sp.num_critical();
    const int nb = sp.num_blocks();

    ReductionProblem rp;
    rp.num_y = K + nb;
    rp.k = k;
    rp.s = s;
    rp.weight_total = 1.0;
    rp.mult.assign(rp.num_y, 1.0);
    rp.expand.resize(rp.num_y);
    for (int i = 0; i < K; ++i) rp.expand[i] = {sp.critical[i]};
    for (int b = 0; b < nb; ++b) {
        auto ids = sp.block_ids(b);
        rp.mult[K + b] = static_cast<double>(ids.size());
        rp.expand[K + b] = std::vector<int>(ids.begin(), ids.end());
    }

    for (int g = 0; g < sp.num_groups(); ++g) {
        ReductionAgent ag;
        ag.weight = sp.groups[g].weight.to_double();
        std::vector<int> var_at_rank(m + 1, -1);
        for (int i = 0; i < K; ++i) var_at_rank[sp.groups[g].placed[i]] = i;
        for (int b = 0; b < nb; ++b) {
            RankSet sup = sp.support(b, g);
            for (const auto& run : sup.runs())
                for (RankValue r = run.lo; r <= run.hi; ++r) var_at_rank[r] = K + b;
        }
        for (RankValue r = 1; r <= m; ++r) {
            if (var_at_rank[r] < 0) throw ArgError("rank not covered by placements or blocks");
            ag.items.push_back({r, var_at_rank[r]});
        }
        rp.agents.push_back(std::move(ag));
    }
    return solve_reduction(rp);
}

std::string lp_model_to_text(const LpModel& model) {
    std::ostringstream os;
    os.precision(12);
    auto name = [&](int j) {
        return j < static_cast<int>(model.var_names.size()) ? model.var_names[j]
                                                            : "v" + std::to_string(j);
    };
    os << "Minimize\n obj:";
    bool any = false;
    for (int j = 0; j < model.num_vars; ++j) {
        if (model.objective[j] == 0.0) continue;
        os << (model.objective[j] >= 0 && any ? " +" : " ") << model.objective[j] << " " << name(j);
        any = true;
    }
    os << "\nSubject To\n";
    for (std::size_t i = 0; i < model.rows.size(); ++i) {
        const auto& row = model.rows[i];
        os << " c" << i << ":";
        bool first = true;
        for (const auto& [j, v] : row.coeffs) {
            os << (v >= 0 && !first ? " +" : " ") << v << " " << name(j);
            first = false;
        }
        const char* rel = row.sense == LpModel::Sense::Eq
                              ? "="
                              : (row.sense == LpModel::Sense::Le ? "<=" : ">=");
        os << " " << rel << " " << row.rhs << "\n";
    }
    os << "Bounds\n";
    for (int j = 0; j < model.num_vars; ++j) {
        if (model.upper[j] < kInf)
            os << " 0 <= " << name(j) << " <= " << model.upper[j] << "\n";
        else
            os << " 0 <= " << name(j) << "\n";
    }
    os << "End\n";
    return os.str();
}

}  // namespace mwelect
