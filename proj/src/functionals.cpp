#include "fibrk/functionals.hpp"

namespace fibrk {

namespace {

int total_dim(const TestConfigDatum& d) { return d.total_dim(); }

// L-bar . Hp^N, the mixed product against the trivial pullback.
Poly pullback_mixed(const TestConfigDatum& d) {
    if (d.trivial_pullback.empty())
        throw Error(ErrorKind::ValidationFailed, "datum has no trivial_pullback role");
    return eval_power_product(d.table, {{d.polarization, 1}, {d.trivial_pullback, total_dim(d)}});
}

Poly top_power(const TestConfigDatum& d) {
    return eval_power_product(d.table, {{d.polarization, total_dim(d) + 1}});
}

Poly exceptional_row(const TestConfigDatum& d, int cls) {
    const VarTableRef& vars = d.table.vars();
    return eval_power_product(d.table,
                              {{ClassCombo::single(vars, cls), 1}, {d.polarization, total_dim(d)}});
}

}  // namespace

Poly e_na(const TestConfigDatum& datum) {
    Rational v = datum.volume();
    int N = total_dim(datum);
    Poly top = top_power(datum);
    top /= Rational(N + 1) * v;
    return top;
}

Poly i_na(const TestConfigDatum& datum) {
    Rational v = datum.volume();
    Poly mixed = pullback_mixed(datum);
    ClassCombo diff = datum.polarization - datum.trivial_pullback;
    Poly second(datum.table.vars());
    if (!diff.empty())
        second = eval_power_product(datum.table, {{diff, 1}, {datum.polarization, total_dim(datum)}});
    Poly result = mixed - second;
    result /= v;
    return result;
}

Poly j_na(const TestConfigDatum& datum) {
    Rational v = datum.volume();
    Poly mixed = pullback_mixed(datum);
    mixed /= v;
    return mixed - e_na(datum);
}

Poly h_na(const TestConfigDatum& datum) {
    Rational v = datum.volume();
    Poly sum(datum.table.vars());
    for (const Exceptional& e : datum.exceptionals) {
        if (e.discrepancy.is_zero()) continue;
        sum += (Rational(e.multiplicity) * e.discrepancy) * exceptional_row(datum, e.cls);
    }
    sum /= v;
    return sum;
}

Poly central_fiber_excess(const TestConfigDatum& datum) {
    Rational v = datum.volume();
    Poly sum(datum.table.vars());
    if (datum.excess_class) {
        sum = exceptional_row(datum, *datum.excess_class);
    } else {
        for (const Exceptional& e : datum.exceptionals) {
            if (e.multiplicity == 1) continue;
            sum += Rational(e.multiplicity - 1) * exceptional_row(datum, e.cls);
        }
    }
    sum /= v;
    return sum;
}

Poly m_na(const TestConfigDatum& datum) {
    if (!datum.klog)
        throw Error(ErrorKind::MissingIntersectionNumber, "datum has no klog role");
    Rational v = datum.volume();
    int N = total_dim(datum);
    Poly klog_row =
        eval_power_product(datum.table, {{*datum.klog, 1}, {datum.polarization, N}});
    Rational s = scalar_curvature(datum.fibration, CurvatureScope::Whole);
    Poly result = klog_row + (s / Rational(N + 1)) * top_power(datum);
    result /= v;
    return result;
}

Poly r_na(const TestConfigDatum& datum) {
    Rational s = scalar_curvature(datum.fibration, CurvatureScope::Whole);
    return m_na(datum) - h_na(datum) - s * e_na(datum);
}

Poly df_intersection(const TestConfigDatum& datum) {
    return m_na(datum) + central_fiber_excess(datum);
}

Poly j_aux(const TestConfigDatum& datum, const ClassCombo& aux, const Rational& aux_dot_x) {
    Rational v = datum.volume();
    int N = total_dim(datum);
    Poly row = eval_power_product(datum.table, {{aux, 1}, {datum.polarization, N}});
    row /= v;
    return row - (Rational(N) * aux_dot_x / v) * e_na(datum);
}

Poly uniform_slack(const TestConfigDatum& datum, const Rational& eps_unif) {
    return m_na(datum) - eps_unif * i_na(datum);
}

Rational df_from_weights(const Rational& a0, const Rational& a1, const Rational& b0,
                         const Rational& b1,
                         std::optional<std::pair<Rational, Rational>> log_terms) {
    if (a0.sign() <= 0)
        throw Error(ErrorKind::DegenerateVolume, "leading Hilbert coefficient a0 must be positive");
    Rational df = Rational(2) * (b1 * a0 - a1 * b0) / (a0 * a0);
    if (log_terms) {
        const auto& [a0_log, b0_log] = *log_terms;
        df += (b0_log * a0 - a0_log * b0) / (a0 * a0);
    }
    return df;
}

FunctionalReport functional_report(const TestConfigDatum& datum, bool check) {
    FunctionalReport report{Poly(datum.table.vars()), Poly(datum.table.vars()),
                            Poly(datum.table.vars()), Poly(datum.table.vars()),
                            Poly(datum.table.vars()), Poly(datum.table.vars()),
                            Poly(datum.table.vars()), Rational(0), {}};
    report.volume = datum.volume();
    report.e_na = e_na(datum);
    report.i_na = i_na(datum);
    report.j_na = j_na(datum);
    report.h_na = h_na(datum);
    if (datum.klog) {
        report.m_na = m_na(datum);
        report.r_na = r_na(datum);
        report.df = df_intersection(datum);
    }

    if (datum.declared_normalized) {
        bool holds = report.j_na == -report.e_na;
        if (!holds)
            throw Error(ErrorKind::ValidationFailed,
                        "datum is declared normalized but J^NA != -E^NA: J = " + report.j_na.str() +
                            ", E = " + report.e_na.str());
        if (check) report.identities_checked.push_back({"normalized: J^NA = -E^NA", true, ""});
    }
    if (check && datum.declared_trivial) {
        bool all_zero = report.e_na.is_zero() && report.i_na.is_zero() && report.j_na.is_zero() &&
                        report.h_na.is_zero() && report.m_na.is_zero();
        report.identities_checked.push_back(
            {"trivial: all functionals vanish", all_zero, all_zero ? "" : "nonzero functional found"});
    }
    if (check && datum.klog) {
        Poly excess = report.df - report.m_na;
        bool nonneg = true;
        for (const auto& [mono, coeff] : excess.terms())
            if (coeff.sign() < 0) nonneg = false;
        report.identities_checked.push_back({"DF - M^NA is a nonnegative excess", nonneg,
                                             nonneg ? "" : "negative excess coefficient"});
    }
    return report;
}

}  // namespace fibrk
