#include "reviewforge/association.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace reviewforge {

namespace {

using Wide = unsigned __int128;

struct Expected {
    double e11, e12, e21, e22;
};

Expected expected_cells(const ContingencyTable& t)
{
    const double n = static_cast<double>(t.total());
    const double row1 = static_cast<double>(t.n11 + t.n12);
    const double row2 = static_cast<double>(t.n21 + t.n22);
    const double col1 = static_cast<double>(t.positive_total());
    const double col2 = static_cast<double>(t.negative_total());
    return {row1 * col1 / n, row1 * col2 / n, row2 * col1 / n, row2 * col2 / n};
}

// Sums the per-cell terms column by column so that exchanging the columns only
// reorders one commutative addition; keeps class-swap antisymmetry exact.
template <typename Term>
double cell_sum(const ContingencyTable& t, Term term)
{
    const auto e = expected_cells(t);
    const double positive = term(static_cast<double>(t.n11), e.e11) + term(static_cast<double>(t.n21), e.e21);
    const double negative = term(static_cast<double>(t.n12), e.e12) + term(static_cast<double>(t.n22), e.e22);
    return positive + negative;
}

double signed_magnitude(const ContingencyTable& t, double magnitude)
{
    const int d = t.direction();
    return d == 0 ? 0.0 : d * std::abs(magnitude);
}

}  // namespace

int ContingencyTable::direction() const
{
    const Wide lhs = static_cast<Wide>(n11) * negative_total();
    const Wide rhs = static_cast<Wide>(n12) * positive_total();
    return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
}

ContingencyTable contingency_counts(const std::string& word, std::span<const LabeledContext> contexts)
{
    ContingencyTable t;
    for (const auto& ctx : contexts) {
        const bool has = std::find(ctx.tokens.begin(), ctx.tokens.end(), word) != ctx.tokens.end();
        if (ctx.positive) {
            ++(has ? t.n11 : t.n21);
        } else {
            ++(has ? t.n12 : t.n22);
        }
    }
    return t;
}

double pmi_score(const ContingencyTable& t)
{
    const int d = t.direction();
    if (d == 0) return 0.0;
    const double n = static_cast<double>(t.total());
    const double col1 = static_cast<double>(t.positive_total());
    const double col2 = static_cast<double>(t.negative_total());
    double num;
    double den;
    if (t.n11 == 0 || t.n12 == 0) {
        num = (static_cast<double>(t.n11) * n + col1) * col2;
        den = (static_cast<double>(t.n12) * n + col2) * col1;
    } else {
        num = static_cast<double>(t.n11) * col2;
        den = static_cast<double>(t.n12) * col1;
    }
    // log2 of the ratio >= 1, then signed: exact under column exchange.
    return d * std::log2(std::max(num, den) / std::min(num, den));
}

double mi_score(const ContingencyTable& t)
{
    if (t.direction() == 0) return 0.0;
    return signed_magnitude(t, cell_sum(t, [](double o, double e) { return o > 0 ? o * std::log2(o / e) : 0.0; }));
}

double chi_square_score(const ContingencyTable& t)
{
    if (t.direction() == 0) return 0.0;
    return signed_magnitude(t, cell_sum(t, [](double o, double e) { return e > 0 ? (o - e) * (o - e) / e : 0.0; }));
}

double llr_score(const ContingencyTable& t)
{
    if (t.direction() == 0) return 0.0;
    return signed_magnitude(t,
                            2.0 * cell_sum(t, [](double o, double e) { return o > 0 ? o * std::log(o / e) : 0.0; }));
}

OpinionScoreSet opinion_scores(const ContingencyTable& t)
{
    return {pmi_score(t), mi_score(t), chi_square_score(t), llr_score(t)};
}

}  // namespace reviewforge
