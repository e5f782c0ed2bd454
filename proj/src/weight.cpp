#include "varlp/weight.hpp"

#include <algorithm>
#include <cmath>

namespace varlp {

namespace {

// integral of (c x^b)^s over [x1, x2], 0 <= x1 <= x2, exact antiderivative
double power_integral(double c, double b, double s, double x1, double x2) {
    if (x2 <= x1) return 0.0;
    double cs = std::pow(c, s);
    if (cs == 0.0) return 0.0;
    double e = b * s;
    if (std::isinf(cs)) return kInf;
    if (x1 == 0.0) {
        if (e <= -1.0) return kInf;
        if (std::isinf(x2)) return kInf;
        return cs * std::pow(x2, e + 1.0) / (e + 1.0);
    }
    if (std::isinf(x2)) {
        if (e >= -1.0) return kInf;
        return -cs * std::pow(x1, e + 1.0) / (e + 1.0);
    }
    if (e == -1.0) return cs * std::log(x2 / x1);
    return cs * (std::pow(x2, e + 1.0) - std::pow(x1, e + 1.0)) / (e + 1.0);
}

} // namespace

Weight Weight::power(double scale, double exponent, Monotonicity mono) {
    PiecewisePowerForm f;
    f.breaks = {0.0, kInf};
    f.pieces = {PowerPiece{scale, exponent}};
    return Weight(Form{std::move(f)}, mono);
}

Weight Weight::piecewise_power(std::vector<double> breaks, std::vector<PowerPiece> pieces,
                               Monotonicity mono) {
    if (breaks.size() != pieces.size() + 1 || pieces.empty())
        throw std::invalid_argument("piecewise weight: need m+1 breakpoints for m pieces");
    if (!std::is_sorted(breaks.begin(), breaks.end()) || breaks.front() < 0.0)
        throw std::invalid_argument("piecewise weight: breakpoints must be sorted, >= 0");
    return Weight(Form{PiecewisePowerForm{std::move(breaks), std::move(pieces)}}, mono);
}

Weight Weight::tabulated(GridFunction values, Monotonicity mono) {
    return Weight(Form{TabulatedForm{std::move(values)}}, mono);
}

void Weight::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw std::invalid_argument(what);
    };
    if (const auto* pw = std::get_if<PiecewisePowerForm>(&form_)) {
        for (const auto& p : pw->pieces)
            require(p.scale >= 0.0, "weight: negative scale");
        if (mono_ != Monotonicity::none) {
            // each power piece is monotone; check piece direction and junctions
            double prev_end = -1.0;
            for (size_t i = 0; i < pw->pieces.size(); ++i) {
                const auto& p = pw->pieces[i];
                double lo = pw->breaks[i], hi = pw->breaks[i + 1];
                if (hi <= lo) continue;
                if (p.scale > 0.0 && p.exponent != 0.0) {
                    bool inc = p.exponent > 0.0;
                    require(inc == (mono_ == Monotonicity::increasing),
                            "weight: piece contradicts declared monotonicity");
                }
                double start = p.scale * (lo > 0.0 ? std::pow(lo, p.exponent)
                                                   : (p.exponent > 0.0 ? 0.0 : p.exponent == 0.0 ? 1.0 : kInf));
                if (prev_end >= 0.0) {
                    if (mono_ == Monotonicity::increasing)
                        require(start >= prev_end - 1e-12 * std::max(1.0, prev_end),
                                "weight: junction contradicts declared monotonicity");
                    else
                        require(start <= prev_end + 1e-12 * std::max(1.0, prev_end),
                                "weight: junction contradicts declared monotonicity");
                }
                double end = std::isinf(hi) ? (p.exponent > 0.0 ? kInf : p.exponent == 0.0 ? p.scale : 0.0)
                                            : p.scale * std::pow(hi, p.exponent);
                prev_end = end;
            }
        }
    } else {
        const auto& g = std::get<TabulatedForm>(form_).g;
        for (double v : g.values)
            require(v >= 0.0, "weight: negative value");
        if (mono_ != Monotonicity::none) {
            for (int i = 0; i + 1 < g.size(); ++i) {
                if (mono_ == Monotonicity::increasing)
                    require(g[i] <= g[i + 1], "weight: cells contradict declared monotonicity");
                else
                    require(g[i] >= g[i + 1], "weight: cells contradict declared monotonicity");
            }
        }
    }
}

double Weight::eval(double x) const {
    if (const auto* pw = std::get_if<PiecewisePowerForm>(&form_)) {
        x = std::abs(x); // power forms are functions of |x|
        if (x < pw->breaks.front() || x > pw->breaks.back()) return 0.0;
        auto it = std::upper_bound(pw->breaks.begin(), pw->breaks.end(), x);
        int i = static_cast<int>(it - pw->breaks.begin()) - 1;
        i = std::clamp(i, 0, static_cast<int>(pw->pieces.size()) - 1);
        const auto& p = pw->pieces[static_cast<size_t>(i)];
        if (x == 0.0)
            return p.exponent > 0.0 ? 0.0 : p.exponent == 0.0 ? p.scale
                                                              : (p.scale > 0.0 ? kInf : 0.0);
        return p.scale * std::pow(x, p.exponent);
    }
    const auto& g = std::get<TabulatedForm>(form_).g;
    if (x < g.grid.span.lo || x > g.grid.span.hi) return 0.0;
    return g.eval(x);
}

double Weight::integral_pow(double s, double x1, double x2) const {
    if (x2 <= x1) return 0.0;
    if (const auto* pw = std::get_if<PiecewisePowerForm>(&form_)) {
        // reflect the negative part onto the positive axis
        if (x1 < 0.0) {
            double neg = integral_pow(s, x2 < 0.0 ? -x2 : 0.0, -x1);
            if (std::isinf(neg) || x2 <= 0.0) return neg;
            double pos = integral_pow(s, 0.0, x2);
            return std::isinf(pos) ? kInf : neg + pos;
        }
        double total = 0.0;
        for (size_t i = 0; i < pw->pieces.size(); ++i) {
            double lo = std::max(x1, pw->breaks[i]);
            double hi = std::min(x2, pw->breaks[i + 1]);
            if (hi <= lo) continue;
            total += power_integral(pw->pieces[i].scale, pw->pieces[i].exponent, s, lo, hi);
            if (std::isinf(total)) return kInf;
        }
        return total;
    }
    const auto& g = std::get<TabulatedForm>(form_).g;
    x1 = std::max(x1, g.grid.span.lo);
    x2 = std::min(x2, g.grid.span.hi);
    if (x2 <= x1) return 0.0;
    // integrate v^s over the step function, exact over partial cells
    int i1 = g.grid.cell_index(x1);
    int i2 = g.grid.cell_index(x2);
    if (x2 == g.grid.point(i2) && i2 > 0) i2--;
    double total = 0.0;
    for (int i = i1; i <= i2; ++i) {
        double lo = std::max(x1, g.grid.point(i));
        double hi = std::min(x2, g.grid.point(i + 1));
        if (hi <= lo) continue;
        double vs = std::pow(g[i], s);
        if (std::isinf(vs)) return kInf;
        total += vs * (hi - lo);
    }
    return total;
}

Weight Weight::reciprocal() const {
    Monotonicity m = mono_ == Monotonicity::increasing ? Monotonicity::decreasing
                   : mono_ == Monotonicity::decreasing ? Monotonicity::increasing
                                                       : Monotonicity::none;
    if (const auto* pw = std::get_if<PiecewisePowerForm>(&form_)) {
        PiecewisePowerForm out;
        out.breaks = pw->breaks;
        for (const auto& p : pw->pieces) {
            if (p.scale <= 0.0)
                throw std::domain_error("reciprocal of a vanishing weight piece");
            out.pieces.push_back(PowerPiece{1.0 / p.scale, -p.exponent});
        }
        return Weight(Form{std::move(out)}, m);
    }
    const auto& g = std::get<TabulatedForm>(form_).g;
    std::vector<double> vals(g.values.size());
    for (size_t i = 0; i < vals.size(); ++i)
        vals[i] = g.values[i] > 0.0 ? 1.0 / g.values[i] : kInf;
    return Weight(Form{TabulatedForm{GridFunction(g.grid, std::move(vals))}}, m);
}

Weight Weight::times_power(double k) const {
    if (const auto* pw = std::get_if<PiecewisePowerForm>(&form_)) {
        PiecewisePowerForm out;
        out.breaks = pw->breaks;
        for (const auto& p : pw->pieces)
            out.pieces.push_back(PowerPiece{p.scale, p.exponent + k});
        return Weight(Form{std::move(out)}, Monotonicity::none);
    }
    const auto& g = std::get<TabulatedForm>(form_).g;
    std::vector<double> vals(g.values.size());
    for (size_t i = 0; i < vals.size(); ++i)
        vals[i] = g.values[i] * std::pow(g.grid.midpoint(static_cast<int>(i)), k);
    return Weight(Form{TabulatedForm{GridFunction(g.grid, std::move(vals))}}, Monotonicity::none);
}

Weight Weight::pow_const(double s) const {
    if (const auto* pw = std::get_if<PiecewisePowerForm>(&form_)) {
        PiecewisePowerForm out;
        out.breaks = pw->breaks;
        for (const auto& p : pw->pieces) {
            double cs = std::pow(p.scale, s);
            if (!std::isfinite(cs))
                throw std::domain_error("pow_const: piece scale not representable");
            out.pieces.push_back(PowerPiece{cs, p.exponent * s});
        }
        return Weight(Form{std::move(out)}, Monotonicity::none);
    }
    const auto& g = std::get<TabulatedForm>(form_).g;
    std::vector<double> vals(g.values.size());
    for (size_t i = 0; i < vals.size(); ++i) {
        vals[i] = std::pow(g.values[i], s);
        if (std::isnan(vals[i])) vals[i] = kInf;
    }
    return Weight(Form{TabulatedForm{GridFunction(g.grid, std::move(vals))}}, Monotonicity::none);
}

std::optional<Weight::PowerPiece> Weight::power_beyond(double x) const {
    if (const auto* pw = std::get_if<PiecewisePowerForm>(&form_)) {
        if (!std::isinf(pw->breaks.back())) {
            if (x >= pw->breaks.back()) return PowerPiece{0.0, 0.0};
            return std::nullopt;
        }
        if (x >= pw->breaks[pw->breaks.size() - 2]) return pw->pieces.back();
        return std::nullopt;
    }
    const auto& g = std::get<TabulatedForm>(form_).g;
    if (x >= g.grid.span.hi) return PowerPiece{0.0, 0.0}; // zero beyond the table
    return std::nullopt;
}

double Weight::window_extremum(double x, bool sup) const {
    if (x <= 0.0) throw std::domain_error("window extremum: x > 0 required");
    Interval W{x / 4.0, 4.0 * x};
    double best = sup ? -kInf : kInf;
    auto take = [&](double v) { best = sup ? std::max(best, v) : std::min(best, v); };
    if (const auto* pw = std::get_if<PiecewisePowerForm>(&form_)) {
        for (size_t i = 0; i < pw->pieces.size(); ++i) {
            double lo = std::max(W.lo, pw->breaks[i]);
            double hi = std::min(W.hi, pw->breaks[i + 1]);
            if (hi < lo) continue;
            const auto& p = pw->pieces[i];
            // each piece is monotone: extrema at the clipped endpoints
            take(p.scale * std::pow(lo, p.exponent));
            take(p.scale * std::pow(hi, p.exponent));
        }
        if (best == kInf || best == -kInf)
            if (W.hi < pw->breaks.front() || W.lo > pw->breaks.back())
                throw std::domain_error("window extremum: window outside the weight domain");
        return best;
    }
    const auto& g = std::get<TabulatedForm>(form_).g;
    Interval R = intersect(W, g.grid.span);
    if (R.hi < R.lo)
        throw std::domain_error("window extremum: window outside the weight domain");
    int i1 = g.grid.cell_index(R.lo);
    int i2 = g.grid.cell_index(R.hi);
    for (int i = i1; i <= i2; ++i) take(g[i]);
    return best;
}

double measure_of(const Weight& u, const Interval& E) { return u.integral(E.lo, E.hi); }

double measure_of(const Weight& u, const std::vector<Interval>& E) {
    double s = 0.0;
    for (const auto& e : E) s += measure_of(u, e);
    return s;
}

DoublingScan DoublingScan::make_default(const Interval& J, int nx, int nr) {
    DoublingScan s;
    s.xs.resize(static_cast<size_t>(nx));
    for (int i = 0; i < nx; ++i)
        s.xs[static_cast<size_t>(i)] = J.lo + J.length() * i / (nx - 1);
    s.rs.resize(static_cast<size_t>(nr));
    const double rmin = J.length() * 1e-4, rmax = J.length() * 0.99;
    for (int i = 0; i < nr; ++i)
        s.rs[static_cast<size_t>(i)] =
            rmin * std::pow(rmax / rmin, static_cast<double>(i) / (nr - 1));
    return s;
}

DoublingReport check_doubling(const Weight& u, const Interval& J, const DoublingScan& scan) {
    if (scan.xs.empty() || scan.rs.empty())
        throw std::invalid_argument("check_doubling: empty scan");
    if (measure_of(u, J) == 0.0)
        throw std::domain_error("check_doubling: weight vanishes on J");

    DoublingReport rep;
    rep.holds = true;
    for (double x : scan.xs) {
        for (double r : scan.rs) {
            if (r <= 0.0 || r >= J.length()) continue;
            Interval big = intersect(Interval{x - 2 * r, x + 2 * r}, J);
            Interval small = intersect(Interval{x - r, x + r}, J);
            double num = big.hi > big.lo ? measure_of(u, big) : 0.0;
            double den = small.hi > small.lo ? measure_of(u, small) : 0.0;
            if (std::isinf(num) && std::isinf(den)) continue; // undecidable window
            if (den == 0.0) {
                if (num == 0.0) continue; // vacuous window
                rep.holds = false;
                rep.best_b = kInf;
                rep.witness = {x, r};
                return rep;
            }
            double ratio = num / den;
            if (ratio > rep.best_b) {
                rep.best_b = ratio;
                rep.witness = {x, r};
            }
        }
    }
    rep.holds = std::isfinite(rep.best_b);
    return rep;
}

GridFunction sigma(const Weight& w, const ExponentFunction& p, const Interval& J,
                   int resolution) {
    if (p.bounds().first <= 1.0)
        throw std::invalid_argument("sigma: requires p_- > 1");
    Grid g(J, resolution);
    std::vector<double> vals(static_cast<size_t>(resolution));
    for (int i = 0; i < resolution; ++i) {
        double x = g.midpoint(i);
        double wx = w.eval(x);
        double pp = conjugate_exponent(p.eval(x));
        vals[static_cast<size_t>(i)] = wx > 0.0 ? std::pow(wx, -pp) : kInf;
    }
    return GridFunction(g, std::move(vals));
}

Weight sigma_weight(const Weight& w, const ExponentFunction& p, const Interval& J,
                    int resolution) {
    auto pc = p.constant_value();
    if (pc && !w.is_tabulated()) {
        try {
            return w.pow_const(-conjugate_exponent(*pc));
        } catch (const std::domain_error&) {
            // vanishing piece: fall back to the sampled form with inf signals
        }
    }
    return Weight::tabulated(sigma(w, p, J, resolution));
}

Ineq11Report check_ineq_1_1(const ExponentFunction& r, const Weight& mu,
                            const Interval& J, int resolution) {
    Grid g(J, resolution);
    if (measure_of(mu, J) == 0.0)
        throw std::domain_error("check_ineq_1_1: degenerate measure");
    const int n = resolution;
    std::vector<double> lo(static_cast<size_t>(n)), hi(static_cast<size_t>(n)),
        mass(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        auto [l, h] = r.inf_sup_on(g.cell(i));
        lo[static_cast<size_t>(i)] = l;
        hi[static_cast<size_t>(i)] = h;
        mass[static_cast<size_t>(i)] = mu.integral(g.point(i), g.point(i + 1));
    }
    Ineq11Report rep;
    for (int a = 0; a < n; ++a) {
        double rl = kInf, rh = -kInf, m = 0.0;
        for (int b = a; b < n; ++b) {
            rl = std::min(rl, lo[static_cast<size_t>(b)]);
            rh = std::max(rh, hi[static_cast<size_t>(b)]);
            m += mass[static_cast<size_t>(b)];
            double v;
            if (m == 0.0)
                v = rl < rh ? kInf : 1.0;
            else
                v = std::pow(m, rl - rh);
            if (v > rep.best_C) {
                rep.best_C = v;
                rep.witness = Interval{g.point(a), g.point(b + 1)};
            }
        }
    }
    return rep;
}

} // namespace varlp
