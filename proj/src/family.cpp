#include "varlp/family.hpp"

#include <cmath>

#include "varlp/norms.hpp"
#include "varlp/rng.hpp"

namespace varlp {

const char* TestFamily::kind_name(FamilyKind k) {
    switch (k) {
    case FamilyKind::random_steps: return "random-steps";
    case FamilyKind::power: return "power";
    case FamilyKind::indicators: return "indicators";
    case FamilyKind::extremal: return "extremal";
    case FamilyKind::normalized_extremal: return "normalized-extremal";
    }
    return "?";
}

namespace {

std::pair<int, int> support_cells(const Grid& grid, const Interval& support) {
    int a = grid.cell_index(std::max(support.lo, grid.span.lo));
    int b = grid.cell_index(std::min(support.hi, grid.span.hi));
    if (grid.point(b) == std::min(support.hi, grid.span.hi) && b > 0) b--;
    return {a, b};
}

GridFunction zeros(const Grid& grid) {
    return GridFunction(grid, std::vector<double>(static_cast<size_t>(grid.n), 0.0));
}

// exact cell averages of x^gamma, the singular cell included when gamma > -1
double cell_average_power(double gamma, double x1, double x2) {
    if (gamma == 0.0) return 1.0;
    double e = gamma + 1.0;
    if (x1 <= 0.0) {
        if (e <= 0.0) return kInf;
        return std::pow(x2, e) / (e * (x2 - x1));
    }
    return (std::pow(x2, e) - std::pow(x1, e)) / (e * (x2 - x1));
}

} // namespace

std::vector<FamilyMember> generate_family(const TestFamily& spec, const Grid& grid,
                                          const Weight& w, const ExponentFunction& p) {
    std::vector<FamilyMember> out;
    const std::string prefix = std::string(TestFamily::kind_name(spec.kind));

    switch (spec.kind) {
    case FamilyKind::random_steps: {
        Rng rng(spec.seed);
        auto [c1, c2] = support_cells(grid, spec.support);
        for (int m = 0; m < spec.count; ++m) {
            GridFunction f = zeros(grid);
            int pieces = rng.uniform_int(spec.min_pieces, spec.max_pieces);
            int width = std::max(1, (c2 - c1 + 1) / pieces);
            double cur = rng.log_uniform(spec.value_lo, spec.value_hi);
            for (int i = c1; i <= c2; ++i) {
                if ((i - c1) % width == 0) cur = rng.log_uniform(spec.value_lo, spec.value_hi);
                f.values[static_cast<size_t>(i)] = cur;
            }
            out.push_back({prefix + "#" + std::to_string(m), std::move(f), false, 0.0, spec.support});
        }
        break;
    }
    case FamilyKind::power: {
        for (double g : spec.gammas) {
            GridFunction f = zeros(grid);
            auto [c1, c2] = support_cells(grid, spec.support);
            for (int i = c1; i <= c2; ++i)
                f.values[static_cast<size_t>(i)] =
                    cell_average_power(g, std::max(grid.point(i), spec.support.lo),
                                       std::min(grid.point(i + 1), spec.support.hi));
            FamilyMember m{prefix + "[gamma=" + std::to_string(g) + "]", std::move(f),
                           spec.analytic, g, spec.support};
            out.push_back(std::move(m));
        }
        break;
    }
    case FamilyKind::indicators: {
        auto [c1, c2] = support_cells(grid, spec.support);
        for (int m = 0; m < spec.count; ++m) {
            // nested left-anchored slices of the support
            int hi = c1 + std::max(1, (c2 - c1 + 1) * (m + 1) / spec.count) - 1;
            GridFunction f = zeros(grid);
            for (int i = c1; i <= hi; ++i) f.values[static_cast<size_t>(i)] = 1.0;
            out.push_back({prefix + "#" + std::to_string(m), std::move(f), false, 0.0,
                           Interval{grid.point(c1), grid.point(hi + 1)}});
        }
        break;
    }
    case FamilyKind::extremal:
    case FamilyKind::normalized_extremal: {
        // f_I = chi_I w^{-p'}; beta = ||w^{-1}||_{L^{p'}(span)}
        ExponentFunction pc = p.conjugate();
        GridFunction winv = zeros(grid);
        for (int i = 0; i < grid.n; ++i) {
            double wx = w.eval(grid.midpoint(i));
            winv.values[static_cast<size_t>(i)] = wx > 0.0 ? 1.0 / wx : kInf;
        }
        double beta = luxemburg_norm(winv, pc, grid.span);
        bool divide = spec.kind == FamilyKind::normalized_extremal || beta > 1.0;
        for (const auto& I : spec.intervals) {
            GridFunction f = zeros(grid);
            for (int i = 0; i < grid.n; ++i) {
                double x = grid.midpoint(i);
                if (x < I.lo || x > I.hi) continue;
                double wx = w.eval(x);
                double s = wx > 0.0 ? std::pow(wx, -conjugate_exponent(p.eval(x))) : kInf;
                f.values[static_cast<size_t>(i)] = divide ? s / beta : s;
            }
            out.push_back({prefix + "[" + std::to_string(I.lo) + "," + std::to_string(I.hi) + "]",
                           std::move(f), false, 0.0, I});
        }
        break;
    }
    }
    return out;
}

} // namespace varlp
