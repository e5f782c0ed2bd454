#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "varlp/interval.hpp"

namespace varlp {

// Uniform grid of n cells over a bounded interval. Cell i spans
// [point(i), point(i+1)), the last cell is closed on the right.
struct Grid {
    Interval span{0.0, 1.0};
    int n = 1;

    Grid() = default;
    Grid(Interval s, int cells) : span(s), n(cells) {
        if (!span.valid() || n < 1)
            throw std::invalid_argument("Grid: need a valid interval and n >= 1");
    }

    double h() const { return span.length() / n; }
    double point(int i) const { return span.lo + i * h(); }
    double midpoint(int i) const { return span.lo + (i + 0.5) * h(); }
    Interval cell(int i) const { return Interval{point(i), point(i + 1)}; }

    // Index of the cell containing x; the right endpoint maps to the last cell.
    int cell_index(double x) const {
        if (x < span.lo || x > span.hi)
            throw std::domain_error("Grid::cell_index: point outside span");
        int i = static_cast<int>(std::floor((x - span.lo) / h()));
        if (i < 0) i = 0;
        if (i >= n) i = n - 1;
        return i;
    }

    // Grid-point index of x, or -1 if x is not aligned (tolerance 1e-9 h).
    int aligned_index(double x) const {
        double t = (x - span.lo) / h();
        double r = std::round(t);
        if (std::abs(t - r) > 1e-9 || r < 0 || r > n) return -1;
        return static_cast<int>(r);
    }

    bool operator==(const Grid& o) const {
        return span.lo == o.span.lo && span.hi == o.span.hi && n == o.n;
    }
};

// Step function constant on the cells of a uniform grid. Values may carry
// +inf as a distinguished "infinite" signal; NaN is rejected.
struct GridFunction {
    Grid grid;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(Grid g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (static_cast<int>(values.size()) != grid.n)
            throw std::invalid_argument("GridFunction: value count != cell count");
        for (double x : values)
            if (std::isnan(x))
                throw std::invalid_argument("GridFunction: NaN value");
    }

    static GridFunction constant(Interval span, int n, double c) {
        return GridFunction(Grid(span, n), std::vector<double>(n, c));
    }

    double h() const { return grid.h(); }
    int size() const { return grid.n; }
    double operator[](int i) const { return values[i]; }

    double eval(double x) const { return values[grid.cell_index(x)]; }

    bool is_zero() const {
        for (double v : values)
            if (v != 0.0) return false;
        return true;
    }

    // Exact integral of the step function over [x1, x2] clipped to the span.
    double integral(double x1, double x2) const {
        x1 = std::max(x1, grid.span.lo);
        x2 = std::min(x2, grid.span.hi);
        if (x2 <= x1) return 0.0;
        const double h = grid.h();
        int i1 = grid.cell_index(x1);
        int i2 = grid.cell_index(x2);
        if (x2 == grid.point(i2) && i2 > 0) i2--; // right edge exactly on a grid point
        if (i1 == i2) return values[i1] * (x2 - x1);
        double s = values[i1] * (grid.point(i1 + 1) - x1);
        for (int i = i1 + 1; i < i2; ++i) s += values[i] * h;
        s += values[i2] * (x2 - grid.point(i2));
        return s;
    }
};

// Prefix sums of cell masses (value * h); P[i] = integral over the first i cells.
class PrefixSums {
public:
    explicit PrefixSums(const GridFunction& f, bool absolute = false) : grid_(f.grid) {
        p_.resize(f.size() + 1, 0.0);
        const double h = f.h();
        for (int i = 0; i < f.size(); ++i) {
            double v = absolute ? std::abs(f[i]) : f[i];
            p_[i + 1] = p_[i] + v * h;
        }
    }

    // Integral over cells [a, b).
    double range(int a, int b) const { return p_[b] - p_[a]; }
    double total() const { return p_.back(); }
    const Grid& grid() const { return grid_; }

private:
    Grid grid_;
    std::vector<double> p_;
};

// The sub-grid of f.grid covering J; throws if J is not grid aligned.
inline std::pair<int, int> aligned_cell_range(const Grid& g, const Interval& J) {
    int a = g.aligned_index(J.lo);
    int b = g.aligned_index(J.hi);
    if (a < 0 || b < 0 || b <= a)
        throw std::invalid_argument("interval is not aligned with the working grid");
    return {a, b};
}

inline GridFunction restrict_to(const GridFunction& f, const Interval& J) {
    auto [a, b] = aligned_cell_range(f.grid, J);
    std::vector<double> v(f.values.begin() + a, f.values.begin() + b);
    return GridFunction(Grid(Interval{f.grid.point(a), f.grid.point(b)}, b - a), std::move(v));
}

} // namespace varlp
