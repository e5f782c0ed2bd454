#include "varlp/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace varlp {

namespace {

// bracket + bisect the decreasing map S on { S(lambda) <= 1 }; returns the
// upper bracket end, so S(result) <= 1 always holds.
double solve_unit_modular(const std::function<double(double)>& S, double tol) {
    double lam = 1.0;
    double s = S(lam);
    double lo, hi;
    if (s > 1.0) {
        int guard = 0;
        while (s > 1.0) {
            lam *= 2.0;
            s = S(lam);
            if (++guard > 4000)
                throw std::overflow_error("luxemburg_norm: no finite modular in bracket [1, 2^4000]");
        }
        lo = lam / 2.0;
        hi = lam;
    } else {
        int guard = 0;
        while (s <= 1.0) {
            lam /= 2.0;
            if (lam < 1e-300) return 0.0;
            s = S(lam);
            if (++guard > 4000) return 0.0;
        }
        lo = lam;
        hi = 2.0 * lam;
    }
    while (hi - lo > tol * hi) {
        double mid = 0.5 * (lo + hi);
        if (S(mid) <= 1.0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

} // namespace

double modular(const GridFunction& f, const ExponentFunction& p, const Interval& J,
               const Weight* mu) {
    auto [a, b] = aligned_cell_range(f.grid, J);
    const double h = f.h();
    double total = 0.0;
    for (int i = a; i < b; ++i) {
        double mass = mu ? mu->integral(f.grid.point(i), f.grid.point(i + 1)) : h;
        if (mass == 0.0) continue;
        double v = std::abs(f[i]);
        if (v == 0.0) continue;
        double term = std::pow(v, p.eval(f.grid.midpoint(i)));
        total += term * mass;
        if (std::isinf(total)) return kInf;
    }
    return total;
}

double luxemburg_norm(const GridFunction& f, const ExponentFunction& p, const Interval& J,
                      const Weight* mu, double tol) {
    if (tol <= 0.0) throw std::invalid_argument("luxemburg_norm: tol > 0 required");
    auto [a, b] = aligned_cell_range(f.grid, J);
    bool all_zero = true;
    for (int i = a; i < b; ++i) {
        double v = std::abs(f[i]);
        if (v == 0.0) continue;
        double mass = mu ? mu->integral(f.grid.point(i), f.grid.point(i + 1)) : f.h();
        if (mass == 0.0) continue;
        all_zero = false;
        if (std::isinf(v) || std::isinf(mass)) return kInf;
    }
    if (all_zero) return 0.0;

    GridFunction scaled = f;
    auto S = [&](double lam) {
        for (size_t i = 0; i < scaled.values.size(); ++i)
            scaled.values[i] = f.values[i] / lam;
        return modular(scaled, p, J, mu);
    };
    return solve_unit_modular(S, tol);
}

GridFunction pointwise_product(const GridFunction& f, const Weight& w) {
    std::vector<double> vals(f.values.size());
    for (int i = 0; i < f.size(); ++i) {
        double wi = w.eval(f.grid.midpoint(i));
        double v = f[i];
        if (std::isinf(wi))
            vals[static_cast<size_t>(i)] = v == 0.0 ? 0.0 : kInf;
        else
            vals[static_cast<size_t>(i)] = wi * v;
    }
    return GridFunction(f.grid, std::move(vals));
}

GridFunction abs_value(const GridFunction& f) {
    std::vector<double> vals(f.values.size());
    for (size_t i = 0; i < vals.size(); ++i) vals[i] = std::abs(f.values[i]);
    return GridFunction(f.grid, std::move(vals));
}

double weighted_norm(const GridFunction& f, const Weight& w, const ExponentFunction& p,
                     const Interval& J, double tol) {
    GridFunction g = pointwise_product(f, w);
    for (double v : g.values)
        if (std::isinf(v)) return kInf;
    return luxemburg_norm(g, p, J, nullptr, tol);
}

double weighted_norm(const GridFunction& f, const GridFunction& w, const ExponentFunction& p,
                     const Interval& J, double tol) {
    if (!(f.grid == w.grid))
        throw std::invalid_argument("weighted_norm: grids differ");
    std::vector<double> vals(f.values.size());
    for (size_t i = 0; i < vals.size(); ++i) {
        double a = w.values[i], b = f.values[i];
        if (std::isinf(a))
            vals[i] = b == 0.0 ? 0.0 : kInf;
        else
            vals[i] = a * b;
        if (std::isinf(vals[i])) return kInf;
    }
    return luxemburg_norm(GridFunction(f.grid, std::move(vals)), p, J, nullptr, tol);
}

double pairing(const GridFunction& f, const GridFunction& g, const Interval& J) {
    if (!(f.grid == g.grid))
        throw std::invalid_argument("pairing: grids differ");
    auto [a, b] = aligned_cell_range(f.grid, J);
    const double h = f.h();
    double total = 0.0;
    for (int i = a; i < b; ++i) total += f[i] * g[i] * h;
    return total;
}

HolderCheck holder_check(const GridFunction& f, const GridFunction& g,
                         const ExponentFunction& p, const Interval& J) {
    HolderCheck out;
    out.lhs = pairing(abs_value(f), abs_value(g), J);
    double nf = luxemburg_norm(f, p, J);
    double ng = luxemburg_norm(g, p.conjugate(), J);
    out.rhs = 2.0 * nf * ng;
    out.ratio = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
    return out;
}

double weight_lux_norm(const Weight& u, const ExponentFunction& p, double lo, double hi,
                       int resolution, double tol) {
    if (hi <= lo) return 0.0;
    // constant exponent over the whole range: classical norm, exact integrals
    std::optional<double> s;
    if (auto c = p.constant_value())
        s = c;
    else if (auto c2 = p.constant_beyond(lo); c2 && p.domain().kind == DomainKind::halfline)
        s = c2;
    if (s) {
        double m = u.integral_pow(*s, lo, hi);
        if (m == 0.0) return 0.0;
        if (std::isinf(m)) return kInf;
        return std::pow(m, 1.0 / *s);
    }

    // split at the compactum edge: grid modular inside, exact power tail outside
    double a_edge = p.tail() ? p.tail()->a : p.domain().box.hi;
    double split = std::clamp(a_edge, lo, hi);
    double s_tail = p.tail() ? p.tail()->p_c : 0.0;
    double tail_T = 0.0;
    if (split < hi) {
        if (!p.tail())
            throw std::domain_error("weight_lux_norm: range escapes a bounded exponent domain");
        tail_T = u.integral_pow(s_tail, split, hi);
        if (std::isinf(tail_T)) return kInf;
    }

    Grid g(Interval{lo, split}, resolution);
    std::vector<double> uv(static_cast<size_t>(resolution)), pv(static_cast<size_t>(resolution));
    bool any = tail_T > 0.0;
    for (int i = 0; i < resolution; ++i) {
        double x = g.midpoint(i);
        uv[static_cast<size_t>(i)] = u.eval(x);
        pv[static_cast<size_t>(i)] = p.eval(x);
        if (std::isinf(uv[static_cast<size_t>(i)])) return kInf;
        if (uv[static_cast<size_t>(i)] > 0.0) any = true;
    }
    if (!any) return 0.0;

    const double h = g.h();
    auto S = [&](double lam) {
        double total = tail_T * std::pow(lam, -s_tail);
        for (int i = 0; i < resolution; ++i) {
            double v = uv[static_cast<size_t>(i)];
            if (v == 0.0) continue;
            total += std::pow(v / lam, pv[static_cast<size_t>(i)]) * h;
            if (std::isinf(total)) return kInf;
        }
        return total;
    };
    return solve_unit_modular(S, tol);
}

} // namespace varlp
