#include "varlp/exponent.hpp"

#include <algorithm>
#include <cmath>

namespace varlp {

ExponentFunction::ExponentFunction(Form f, Domain d, std::optional<Tail> t)
    : form_(std::move(f)), domain_(d), tail_(std::move(t)) {
    validate();
}

ExponentFunction ExponentFunction::constant(double p) {
    return ExponentFunction(Constant{p}, Domain{DomainKind::line, Interval{-1.0, 1.0}}, std::nullopt);
}

ExponentFunction ExponentFunction::constant_on(double p, Domain dom) {
    return ExponentFunction(Constant{p}, dom, std::nullopt);
}

ExponentFunction ExponentFunction::affine(double c0, double c1, Interval dom) {
    return ExponentFunction(Affine{c0, c1}, Domain{DomainKind::bounded, dom}, std::nullopt);
}

ExponentFunction ExponentFunction::piecewise(std::vector<double> breaks, std::vector<double> values) {
    if (breaks.size() != values.size() + 1 || values.empty())
        throw std::invalid_argument("piecewise exponent: need m+1 breakpoints for m values");
    if (!std::is_sorted(breaks.begin(), breaks.end()))
        throw std::invalid_argument("piecewise exponent: breakpoints must be sorted");
    Interval dom{breaks.front(), breaks.back()};
    return ExponentFunction(Piecewise{std::move(breaks), std::move(values)},
                            Domain{DomainKind::bounded, dom}, std::nullopt);
}

ExponentFunction ExponentFunction::tabulated(GridFunction samples) {
    Interval dom = samples.grid.span;
    return ExponentFunction(Tabulated{std::move(samples)},
                            Domain{DomainKind::bounded, dom}, std::nullopt);
}

ExponentFunction ExponentFunction::with_tail(double a, double p_c, DomainKind kind) const {
    if (a <= 0.0) throw std::invalid_argument("tail: a must be positive");
    if (kind == DomainKind::bounded)
        throw std::invalid_argument("tail: only half-line and line domains take a tail");
    Interval compactum = kind == DomainKind::halfline ? Interval{0.0, a} : Interval{-a, a};
    // piecewise and tabulated forms must cover the compactum; constant and
    // affine forms extend by their formula
    if (std::holds_alternative<Piecewise>(form_) || std::holds_alternative<Tabulated>(form_)) {
        if (!domain_.box.contains(compactum))
            throw std::invalid_argument("tail: base form does not cover the compactum");
    }
    return ExponentFunction(form_, Domain{kind, compactum}, Tail{a, p_c});
}

void ExponentFunction::validate() const {
    if (domain_.kind != DomainKind::bounded && !tail_ &&
        !std::holds_alternative<Constant>(form_))
        throw std::invalid_argument("exponent on an unbounded domain needs a tail or constant form");
    auto [lo, hi] = bounds();
    if (!(lo > 1.0) || !(hi < kInf))
        throw std::invalid_argument("exponent bounds must satisfy 1 < p_- <= p_+ < infinity");
}

std::optional<double> ExponentFunction::constant_value() const {
    if (const auto* c = std::get_if<Constant>(&form_)) {
        if (!tail_ || tail_->p_c == c->value) return c->value;
    }
    return std::nullopt;
}

std::optional<double> ExponentFunction::constant_beyond(double cut) const {
    if (auto c = constant_value()) return c;
    if (tail_ && cut >= tail_->a) return tail_->p_c;
    return std::nullopt;
}

double ExponentFunction::eval_base(double x) const {
    if (const auto* c = std::get_if<Constant>(&form_)) return c->value;
    if (const auto* a = std::get_if<Affine>(&form_)) return a->c0 + a->c1 * x;
    if (const auto* pw = std::get_if<Piecewise>(&form_)) {
        // left-closed / right-open cells, last cell closed
        auto it = std::upper_bound(pw->breaks.begin(), pw->breaks.end(), x);
        int i = static_cast<int>(it - pw->breaks.begin()) - 1;
        i = std::clamp(i, 0, static_cast<int>(pw->values.size()) - 1);
        return pw->values[static_cast<size_t>(i)];
    }
    return std::get<Tabulated>(form_).samples.eval(x);
}

double ExponentFunction::eval(double x) const {
    if (!domain_.contains(x))
        throw std::domain_error("exponent evaluated outside its domain");
    if (tail_) {
        bool outside = domain_.kind == DomainKind::halfline ? x > tail_->a
                                                            : std::abs(x) > tail_->a;
        if (outside) return tail_->p_c;
    }
    if (domain_.kind != DomainKind::bounded && std::holds_alternative<Constant>(form_) && !tail_)
        return std::get<Constant>(form_).value;
    if (std::holds_alternative<Constant>(form_) || std::holds_alternative<Affine>(form_))
        return eval_base(x); // formula extends across the compactum
    return eval_base(std::clamp(x, domain_.box.lo, domain_.box.hi));
}

std::pair<double, double> ExponentFunction::base_inf_sup(const Interval& E) const {
    Interval R = intersect(E, domain_.box);
    if (const auto* c = std::get_if<Constant>(&form_)) return {c->value, c->value};
    if (const auto* a = std::get_if<Affine>(&form_)) {
        double v1 = a->c0 + a->c1 * R.lo;
        double v2 = a->c0 + a->c1 * R.hi;
        return {std::min(v1, v2), std::max(v1, v2)};
    }
    double lo = kInf, hi = -kInf;
    if (const auto* pw = std::get_if<Piecewise>(&form_)) {
        for (size_t i = 0; i < pw->values.size(); ++i) {
            Interval cell{pw->breaks[i], pw->breaks[i + 1]};
            if (cell.hi <= cell.lo) continue;
            if (!empty_intersection(cell, R) || (R.lo == R.hi && cell.contains(R.lo))) {
                lo = std::min(lo, pw->values[i]);
                hi = std::max(hi, pw->values[i]);
            }
        }
        return {lo, hi};
    }
    const auto& g = std::get<Tabulated>(form_).samples;
    int i1 = g.grid.cell_index(std::max(R.lo, g.grid.span.lo));
    int i2 = g.grid.cell_index(std::min(R.hi, g.grid.span.hi));
    for (int i = i1; i <= i2; ++i) {
        lo = std::min(lo, g[i]);
        hi = std::max(hi, g[i]);
    }
    return {lo, hi};
}

std::pair<double, double> ExponentFunction::inf_sup_on(const Interval& E) const {
    bool meets_box = !empty_intersection(E, domain_.box) ||
                     domain_.box.contains(E.lo) || domain_.box.contains(E.hi);
    double lo = kInf, hi = -kInf;
    if (tail_) {
        // part of E beyond the compactum contributes the tail constant
        bool outside = domain_.kind == DomainKind::halfline
                           ? E.hi > tail_->a
                           : (E.hi > tail_->a || E.lo < -tail_->a);
        if (outside) { lo = hi = tail_->p_c; }
        if (meets_box) {
            auto [bl, bh] = base_inf_sup(E);
            lo = std::min(lo, bl);
            hi = std::max(hi, bh);
        }
        if (!(lo <= hi)) throw std::domain_error("inf_sup_on: empty intersection with the domain");
        return {lo, hi};
    }
    if (domain_.kind != DomainKind::bounded) {
        double c = std::get<Constant>(form_).value;
        if (domain_.kind == DomainKind::halfline && E.hi <= 0.0)
            throw std::domain_error("inf_sup_on: empty intersection with the domain");
        return {c, c};
    }
    if (!meets_box)
        throw std::domain_error("inf_sup_on: empty intersection with the domain");
    return base_inf_sup(E);
}

std::pair<double, double> ExponentFunction::bounds() const {
    if (domain_.kind == DomainKind::bounded) return base_inf_sup(domain_.box);
    auto [lo, hi] = base_inf_sup(domain_.box);
    if (tail_) {
        lo = std::min(lo, tail_->p_c);
        hi = std::max(hi, tail_->p_c);
    }
    return {lo, hi};
}

ExponentFunction ExponentFunction::conjugate(int resolution) const {
    auto [lo, hi] = bounds();
    if (!(lo > 1.0))
        throw std::invalid_argument("conjugate: requires p_- > 1");
    std::optional<Tail> tail;
    if (tail_) tail = Tail{tail_->a, conjugate_exponent(tail_->p_c)};

    Form out;
    if (const auto* c = std::get_if<Constant>(&form_)) {
        out = Constant{conjugate_exponent(c->value)};
    } else if (const auto* pw = std::get_if<Piecewise>(&form_)) {
        std::vector<double> vals(pw->values.size());
        for (size_t i = 0; i < vals.size(); ++i) vals[i] = conjugate_exponent(pw->values[i]);
        out = Piecewise{pw->breaks, std::move(vals)};
    } else if (const auto* t = std::get_if<Tabulated>(&form_)) {
        std::vector<double> vals(t->samples.values.size());
        for (size_t i = 0; i < vals.size(); ++i) vals[i] = conjugate_exponent(t->samples.values[i]);
        out = Tabulated{GridFunction(t->samples.grid, std::move(vals))};
    } else {
        // affine conjugate is not affine; sample it onto a grid over the compactum
        Grid g(domain_.box, resolution);
        std::vector<double> vals(static_cast<size_t>(resolution));
        for (int i = 0; i < resolution; ++i)
            vals[static_cast<size_t>(i)] = conjugate_exponent(eval_base(g.midpoint(i)));
        out = Tabulated{GridFunction(g, std::move(vals))};
    }
    return ExponentFunction(std::move(out), domain_, tail);
}

bool ExponentFunction::structurally_continuous() const {
    double edge_value_lo = 0.0, edge_value_hi = 0.0;
    if (const auto* pw = std::get_if<Piecewise>(&form_)) {
        for (size_t i = 0; i + 1 < pw->values.size(); ++i)
            if (pw->values[i] != pw->values[i + 1]) return false;
        edge_value_lo = pw->values.front();
        edge_value_hi = pw->values.back();
    } else if (std::holds_alternative<Tabulated>(form_)) {
        return true; // samples of an unknown continuous function
    } else if (const auto* a = std::get_if<Affine>(&form_)) {
        edge_value_lo = a->c0 + a->c1 * domain_.box.lo;
        edge_value_hi = a->c0 + a->c1 * domain_.box.hi;
    } else {
        double c = std::get<Constant>(form_).value;
        edge_value_lo = edge_value_hi = c;
    }
    if (tail_) {
        if (edge_value_hi != tail_->p_c) return false;
        if (domain_.kind == DomainKind::line && edge_value_lo != tail_->p_c) return false;
    }
    return true;
}

LogHolderReport check_log_holder(const ExponentFunction& p, const Interval& J,
                                 int pair_resolution) {
    if (!J.valid()) throw std::invalid_argument("check_log_holder: J must be bounded");
    if (pair_resolution < 2) throw std::invalid_argument("check_log_holder: resolution >= 2");

    LogHolderReport rep;
    rep.holds = p.structurally_continuous();

    const int m = pair_resolution;
    const double step = J.length() / (m - 1);
    std::vector<double> xs(static_cast<size_t>(m)), ps(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        xs[static_cast<size_t>(i)] = J.lo + i * step;
        ps[static_cast<size_t>(i)] = p.eval(xs[static_cast<size_t>(i)]);
    }
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            double d = xs[static_cast<size_t>(j)] - xs[static_cast<size_t>(i)];
            if (d <= 0.0 || d > 0.5) continue;
            double c = std::abs(ps[static_cast<size_t>(i)] - ps[static_cast<size_t>(j)]) * (-std::log(d));
            if (c > rep.best_c) {
                rep.best_c = c;
                rep.witness = {xs[static_cast<size_t>(i)], xs[static_cast<size_t>(j)]};
            }
        }
    }
    if (!std::isfinite(rep.best_c)) rep.holds = false;
    return rep;
}

bool check_constant_outside(const ExponentFunction& p, double a) {
    if (a <= 0.0) throw std::invalid_argument("check_constant_outside: a > 0 required");
    const auto& dom = p.domain();
    const auto& tail = p.tail();
    if (tail && tail->a <= a) return true;

    double c_required = tail ? tail->p_c : std::nan("");
    bool have_required = tail.has_value();

    std::vector<Interval> regions;
    if (dom.kind == DomainKind::halfline) {
        double edge = tail ? tail->a : dom.box.hi;
        if (a < edge) regions.push_back(Interval{a, edge});
    } else if (dom.kind == DomainKind::line) {
        double edge = tail ? tail->a : dom.box.hi;
        if (a < edge) {
            regions.push_back(Interval{a, edge});
            regions.push_back(Interval{-edge, -a});
        }
    } else {
        if (a < dom.box.hi) regions.push_back(Interval{a, dom.box.hi});
        if (-a > dom.box.lo) regions.push_back(Interval{dom.box.lo, -a});
    }

    for (const auto& R : regions) {
        auto [lo, hi] = p.inf_sup_on(R);
        if (lo != hi) return false;
        if (have_required && lo != c_required) return false;
        c_required = lo;
        have_required = true;
    }
    if (!tail && dom.kind != DomainKind::bounded) {
        // unbounded with no tail: only the constant form qualifies
        return p.constant_value().has_value();
    }
    return true;
}

} // namespace varlp
