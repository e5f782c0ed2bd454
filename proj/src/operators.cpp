#include "varlp/operators.hpp"

#include <algorithm>
#include <cmath>

namespace varlp {

namespace {

// prefix-sum backed exact integral of |f| over arbitrary [x1, x2]
class AbsIntegrator {
public:
    explicit AbsIntegrator(const GridFunction& f) : g_(f.grid), v_(f.size()) {
        p_.resize(static_cast<size_t>(f.size()) + 1, 0.0);
        for (int i = 0; i < f.size(); ++i) {
            v_[static_cast<size_t>(i)] = std::abs(f[i]);
            p_[static_cast<size_t>(i) + 1] = p_[static_cast<size_t>(i)] +
                                             v_[static_cast<size_t>(i)] * g_.h();
        }
    }

    double operator()(double x1, double x2) const {
        x1 = std::max(x1, g_.span.lo);
        x2 = std::min(x2, g_.span.hi);
        if (x2 <= x1) return 0.0;
        int i1 = g_.cell_index(x1);
        int i2 = g_.cell_index(x2);
        if (x2 == g_.point(i2) && i2 > 0) i2--;
        if (i1 == i2) return v_[static_cast<size_t>(i1)] * (x2 - x1);
        double s = v_[static_cast<size_t>(i1)] * (g_.point(i1 + 1) - x1);
        s += p_[static_cast<size_t>(i2)] - p_[static_cast<size_t>(i1) + 1];
        s += v_[static_cast<size_t>(i2)] * (x2 - g_.point(i2));
        return s;
    }

    double total() const { return p_.back(); }

private:
    Grid g_;
    std::vector<double> v_;
    std::vector<double> p_;
};

} // namespace

GridFunction maximal_bounded(const GridFunction& f, const Interval& J, double alpha) {
    if (alpha < 0.0 || alpha >= 1.0)
        throw std::invalid_argument("maximal operator: 0 <= alpha < 1 required");
    GridFunction fr = restrict_to(f, J);
    const int m = fr.size();
    const double h = fr.h();
    PrefixSums P(fr, /*absolute=*/true);

    std::vector<double> lenpow(static_cast<size_t>(m) + 1, 0.0);
    for (int k = 1; k <= m; ++k)
        lenpow[static_cast<size_t>(k)] = std::pow(k * h, alpha - 1.0);

    std::vector<double> out(static_cast<size_t>(m), 0.0);
    std::vector<double> suffix(static_cast<size_t>(m) + 2, 0.0);
    for (int a = 0; a < m; ++a) {
        suffix[static_cast<size_t>(m) + 1] = -kInf;
        for (int b = m; b > a; --b) {
            double v = lenpow[static_cast<size_t>(b - a)] * P.range(a, b);
            suffix[static_cast<size_t>(b)] = std::max(v, suffix[static_cast<size_t>(b) + 1]);
        }
        for (int i = a; i < m; ++i)
            out[static_cast<size_t>(i)] =
                std::max(out[static_cast<size_t>(i)], suffix[static_cast<size_t>(i) + 1]);
    }
    return GridFunction(fr.grid, std::move(out));
}

double maximal_bounded_at(const GridFunction& f, const Interval& J, double alpha, double x) {
    if (alpha < 0.0 || alpha >= 1.0)
        throw std::invalid_argument("maximal operator: 0 <= alpha < 1 required");
    GridFunction fr = restrict_to(f, J);
    const int m = fr.size();
    const double h = fr.h();
    if (x < fr.grid.span.lo || x > fr.grid.span.hi)
        throw std::domain_error("maximal_bounded_at: point outside J");
    PrefixSums P(fr, true);
    double best = 0.0;
    for (int a = 0; a < m; ++a) {
        if (fr.grid.point(a) > x) break;
        for (int b = a + 1; b <= m; ++b) {
            if (fr.grid.point(b) < x) continue;
            double v = std::pow((b - a) * h, alpha - 1.0) * P.range(a, b);
            best = std::max(best, v);
        }
    }
    return best;
}

namespace {

// per-node averages |I|^{alpha-1} int_I |f| for every lattice level
struct NodeAverages {
    std::vector<std::vector<double>> value; // [d][j]
};

NodeAverages node_averages(const GridFunction& f, const DyadicLattice& lat, double alpha) {
    if (!(f.grid.span.lo == lat.root.lo && f.grid.span.hi == lat.root.hi))
        throw std::invalid_argument("maximal_dyadic: f must live on the lattice root");
    if (f.size() % lat.leaves() != 0)
        throw std::invalid_argument("maximal_dyadic: grid not aligned with lattice leaves");
    PrefixSums P(f, true);
    const int per_leaf = f.size() / lat.leaves();
    NodeAverages na;
    na.value.resize(static_cast<size_t>(lat.depth) + 1);
    for (int d = 0; d <= lat.depth; ++d) {
        int count = 1 << d;
        int cells = per_leaf * (lat.leaves() / count);
        double lp = std::pow(lat.length_at(d), alpha - 1.0);
        auto& row = na.value[static_cast<size_t>(d)];
        row.resize(static_cast<size_t>(count));
        for (int j = 0; j < count; ++j)
            row[static_cast<size_t>(j)] = lp * P.range(j * cells, (j + 1) * cells);
    }
    return na;
}

} // namespace

GridFunction maximal_dyadic(const GridFunction& f, const DyadicLattice& lat, double alpha) {
    if (alpha < 0.0 || alpha >= 1.0)
        throw std::invalid_argument("maximal operator: 0 <= alpha < 1 required");
    NodeAverages na = node_averages(f, lat, alpha);
    // cascade the running max from the root to the leaves
    for (int d = 1; d <= lat.depth; ++d) {
        auto& row = na.value[static_cast<size_t>(d)];
        const auto& up = na.value[static_cast<size_t>(d) - 1];
        for (size_t j = 0; j < row.size(); ++j)
            row[j] = std::max(row[j], up[j / 2]);
    }
    const auto& leaf_best = na.value[static_cast<size_t>(lat.depth)];
    const int per_leaf = f.size() / lat.leaves();
    std::vector<double> out(static_cast<size_t>(f.size()));
    for (int i = 0; i < f.size(); ++i)
        out[static_cast<size_t>(i)] = leaf_best[static_cast<size_t>(i / per_leaf)];
    return GridFunction(f.grid, std::move(out));
}

DyadicDecomposition level_decomposition(const GridFunction& f, const DyadicLattice& lat,
                                        double alpha, int k) {
    NodeAverages na = node_averages(f, lat, alpha);
    const double threshold = std::ldexp(1.0, k);
    DyadicDecomposition dec;
    dec.level = k;

    // depth-first search for maximal nodes with average > 2^k
    std::vector<std::pair<int, int>> stack{{0, 0}};
    std::vector<std::pair<int, int>> maximal;
    while (!stack.empty()) {
        auto [d, j] = stack.back();
        stack.pop_back();
        if (na.value[static_cast<size_t>(d)][static_cast<size_t>(j)] > threshold) {
            maximal.emplace_back(d, j);
            continue;
        }
        if (d < lat.depth) {
            stack.emplace_back(d + 1, 2 * j + 1);
            stack.emplace_back(d + 1, 2 * j);
        }
    }
    std::sort(maximal.begin(), maximal.end(), [&](auto a, auto b) {
        return lat.node(a.first, a.second).lo < lat.node(b.first, b.second).lo;
    });

    GridFunction M = maximal_dyadic(f, lat, alpha);
    const double upper = std::ldexp(1.0, k + 1);
    const int per_leaf = f.size() / lat.leaves();
    for (auto [d, j] : maximal) {
        dec.maximal_intervals.push_back(lat.node(d, j));
        int cells = per_leaf * (lat.leaves() / (1 << d));
        std::vector<int> shard;
        for (int i = j * cells; i < (j + 1) * cells; ++i)
            if (M[i] <= upper) shard.push_back(i);
        dec.shards.push_back(std::move(shard));
    }
    return dec;
}

GridFunction maximal_shifted(const GridFunction& f, const DyadicLattice& lat, double alpha) {
    if (alpha < 0.0 || alpha >= 1.0)
        throw std::invalid_argument("maximal operator: 0 <= alpha < 1 required");
    if (std::abs(lat.shift) >= lat.shift_window())
        throw std::domain_error("maximal_shifted: shift outside (-|S|/16, |S|/16)");
    if (!(f.grid.span.lo == lat.root.lo && f.grid.span.hi == lat.root.hi))
        throw std::invalid_argument("maximal_shifted: f must live on the lattice root");
    AbsIntegrator integ(f);
    const double t = lat.shift;
    const double eps = 1e-12 * lat.root.length();

    std::vector<double> out(static_cast<size_t>(f.size()), 0.0);
    for (int i = 0; i < f.size(); ++i) {
        double x = f.grid.midpoint(i);
        double best = 0.0;
        for (int d = 0; d <= lat.depth; ++d) {
            double len = lat.length_at(d);
            int j = static_cast<int>(std::floor((x + t - lat.root.lo) / len));
            if (j < 0 || j >= (1 << d)) continue;
            Interval I1 = lat.shifted_node(d, j);
            if (I1.lo < lat.root.lo - eps || I1.hi > lat.root.hi + eps) continue;
            double v = std::pow(len, alpha - 1.0) * integ(I1.lo, I1.hi);
            best = std::max(best, v);
        }
        out[static_cast<size_t>(i)] = best;
    }
    return GridFunction(f.grid, std::move(out));
}

GridFunction shift_averaged_maximal(const GridFunction& f, const DyadicLattice& lat,
                                    double alpha, int shift_count) {
    if (shift_count < 1)
        throw std::invalid_argument("shift_averaged_maximal: shift_count >= 1");
    std::vector<double> mean(static_cast<size_t>(f.size()), 0.0);
    for (int s = 0; s < shift_count; ++s) {
        DyadicLattice lt = lat;
        lt.shift = lat.shift_window() * (2.0 * (s + 0.5) / shift_count - 1.0);
        GridFunction Kt = maximal_shifted(f, lt, alpha);
        for (int i = 0; i < f.size(); ++i)
            mean[static_cast<size_t>(i)] += Kt[i] / shift_count;
    }
    return GridFunction(f.grid, std::move(mean));
}

double maximal_window_at(const GridFunction& f, DomainKind domain, double alpha, double x) {
    if (alpha < 0.0 || alpha >= 1.0)
        throw std::invalid_argument("maximal operator: 0 <= alpha < 1 required");
    if (domain == DomainKind::halfline && f.grid.span.lo < -1e-12)
        throw std::invalid_argument("maximal_window: half-line input must live on R_+");
    AbsIntegrator integ(f);

    auto W = [&](double h) {
        double lo = x - h;
        if (domain == DomainKind::halfline) lo = std::max(lo, 0.0);
        return integ(lo, x + h);
    };
    auto phi = [&](double h) { return std::pow(h, alpha - 1.0) * W(h); };

    // candidate radii: window edges on grid points and the domain boundary
    std::vector<double> hs;
    hs.reserve(static_cast<size_t>(f.size()) + 3);
    for (int i = 0; i <= f.size(); ++i) {
        double d = std::abs(x - f.grid.point(i));
        if (d > 0.0) hs.push_back(d);
    }
    if (domain == DomainKind::halfline && x > 0.0) hs.push_back(x);
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    if (hs.empty()) return 0.0;

    double best = 0.0;
    for (double h : hs) best = std::max(best, phi(h));
    if (alpha > 0.0) {
        // W is linear on each segment; phi may peak inside it
        for (size_t i = 0; i + 1 < hs.size(); ++i) {
            double h1 = hs[i], h2 = hs[i + 1];
            double I1 = W(h1), I2 = W(h2);
            double s = (I2 - I1) / (h2 - h1);
            if (s == 0.0) continue;
            double C = I1 - s * h1;
            double hstar = C * (1.0 - alpha) / (s * alpha);
            if (hstar > h1 && hstar < h2)
                best = std::max(best, phi(hstar));
        }
    }
    return best;
}

GridFunction maximal_window(const GridFunction& f, DomainKind domain, double alpha) {
    std::vector<double> out(static_cast<size_t>(f.size()));
    for (int i = 0; i < f.size(); ++i)
        out[static_cast<size_t>(i)] = maximal_window_at(f, domain, alpha, f.grid.midpoint(i));
    return GridFunction(f.grid, std::move(out));
}

double maximal_finite_at(const GridFunction& f, double x) {
    if (x < 0.0) throw std::domain_error("maximal_finite: x must lie on R_+");
    AbsIntegrator integ(f);
    const Interval hull = f.grid.span;
    double best = 0.0;
    if (x >= hull.lo && x <= hull.hi) {
        best = maximal_bounded_at(f, hull, 0.0, x);
        // intervals reaching down to 0 below the hull
        if (hull.lo > 0.0) {
            for (int b = 0; b <= f.size(); ++b) {
                double z = f.grid.point(b);
                if (z < x) continue;
                if (z <= 0.0) continue;
                best = std::max(best, integ(hull.lo, z) / z);
            }
        }
    } else if (x > hull.hi) {
        // [y, x] with y a grid point (or 0); mass is the tail beyond y
        best = std::max(best, integ.total() / x);
        for (int a = 0; a <= f.size(); ++a) {
            double y = f.grid.point(a);
            if (y >= x) break;
            best = std::max(best, integ(y, hull.hi) / (x - y));
        }
    } else { // x < hull.lo
        for (int b = 0; b <= f.size(); ++b) {
            double z = f.grid.point(b);
            if (z <= x) continue;
            best = std::max(best, integ(hull.lo, z) / (z - x));
        }
    }
    return best;
}

GridFunction maximal_finite(const GridFunction& f, const Interval& eval_span, int eval_cells) {
    Grid eg(eval_span, eval_cells);
    // fast path for eval cells inside the hull when the grids align
    int a0 = eg.aligned_index(f.grid.span.lo);
    int b0 = eg.aligned_index(f.grid.span.hi);
    bool aligned = a0 >= 0 && b0 >= 0 && (b0 - a0) == f.size();

    std::vector<double> out(static_cast<size_t>(eval_cells));
    GridFunction inner = aligned ? maximal_bounded(f, f.grid.span, 0.0) : GridFunction();
    std::vector<double> down;   // sup over [hull.lo or 0, z] reaching below the hull
    AbsIntegrator integ(f);
    if (aligned && f.grid.span.lo > 0.0) {
        down.resize(static_cast<size_t>(f.size()) + 1, 0.0);
        double run = 0.0;
        for (int b = f.size(); b >= 0; --b) {
            double z = f.grid.point(b);
            if (z > 0.0) run = std::max(run, integ(f.grid.span.lo, z) / z);
            down[static_cast<size_t>(b)] = run;
        }
    }
    for (int i = 0; i < eval_cells; ++i) {
        double x = eg.midpoint(i);
        if (aligned && i >= a0 && i < b0) {
            double v = inner[i - a0];
            if (!down.empty()) v = std::max(v, down[static_cast<size_t>(i - a0) + 1]);
            out[static_cast<size_t>(i)] = v;
        } else {
            out[static_cast<size_t>(i)] = maximal_finite_at(f, x);
        }
    }
    return GridFunction(eg, std::move(out));
}

HilbertResult hilbert(const GridFunction& f, const std::vector<double>& eval_points) {
    HilbertResult res;
    res.values.resize(eval_points.size());
    const double snap = 1e-12 * f.grid.span.length();
    for (size_t k = 0; k < eval_points.size(); ++k) {
        double x = eval_points[k];
        // shift evaluation points that sit exactly on a cell boundary
        int gi = f.grid.aligned_index(x);
        if (gi >= 0 && std::abs(x - f.grid.point(gi)) <= snap) {
            x = gi < f.size() ? f.grid.point(gi) + 0.5 * f.h()
                              : f.grid.point(gi) - 0.5 * f.h();
            res.shifted_points.push_back(static_cast<int>(k));
        }
        double s = 0.0;
        for (int i = 0; i < f.size(); ++i) {
            double c = f[i];
            if (c == 0.0) continue;
            double da = x - f.grid.point(i);
            double db = x - f.grid.point(i + 1);
            s += c * std::log(std::abs(da / db));
        }
        res.values[k] = s;
    }
    return res;
}

GridFunction hilbert_on_grid(const GridFunction& f, const Grid& eval_grid) {
    std::vector<double> pts(static_cast<size_t>(eval_grid.n));
    for (int i = 0; i < eval_grid.n; ++i) pts[static_cast<size_t>(i)] = eval_grid.midpoint(i);
    HilbertResult r = hilbert(f, pts);
    return GridFunction(eval_grid, std::move(r.values));
}

GridFunction hardy_transform(const GridFunction& f, const Weight& v, const Weight& w,
                             HardyDirection dir) {
    const int n = f.size();
    std::vector<double> mass(static_cast<size_t>(n)), half(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        mass[static_cast<size_t>(i)] = w.integral(f.grid.point(i), f.grid.point(i + 1));
        half[static_cast<size_t>(i)] = w.integral(f.grid.point(i), f.grid.midpoint(i));
    }
    auto contrib = [](double fi, double m) { return fi == 0.0 ? 0.0 : fi * m; };

    std::vector<double> out(static_cast<size_t>(n));
    if (dir == HardyDirection::forward) {
        double run = 0.0; // integral of f w over earlier cells
        for (int i = 0; i < n; ++i) {
            double upto_mid = run + contrib(f[i], half[static_cast<size_t>(i)]);
            double vx = v.eval(f.grid.midpoint(i));
            out[static_cast<size_t>(i)] = vx == 0.0 ? 0.0 : vx * upto_mid;
            run += contrib(f[i], mass[static_cast<size_t>(i)]);
        }
    } else {
        double run = 0.0; // integral of f w over later cells
        for (int i = n - 1; i >= 0; --i) {
            double from_mid =
                run + contrib(f[i], mass[static_cast<size_t>(i)] - half[static_cast<size_t>(i)]);
            double vx = v.eval(f.grid.midpoint(i));
            out[static_cast<size_t>(i)] = vx == 0.0 ? 0.0 : vx * from_mid;
            run += contrib(f[i], mass[static_cast<size_t>(i)]);
        }
    }
    return GridFunction(f.grid, std::move(out));
}

} // namespace varlp
