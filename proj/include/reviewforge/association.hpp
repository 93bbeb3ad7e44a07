#pragma once

// Word/polarity association statistics over a 2x2 contingency table.
//
//               positive   negative
//   word          n11        n12
//   other         n21        n22
//
// MI, chi-square and LLR are signed by sign(n11*col2 - n12*col1), which equals
// the sign of n11 - E11. A table where the word never occurs, or whose word row
// is proportional to the column totals, scores exactly 0 on every measure.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace reviewforge {

struct ContingencyTable {
    std::uint64_t n11 = 0;
    std::uint64_t n12 = 0;
    std::uint64_t n21 = 0;
    std::uint64_t n22 = 0;

    std::uint64_t total() const { return n11 + n12 + n21 + n22; }
    std::uint64_t positive_total() const { return n11 + n21; }
    std::uint64_t negative_total() const { return n12 + n22; }
    /// Positive/negative columns exchanged.
    ContingencyTable swapped() const { return {n12, n11, n22, n21}; }
    /// -1, 0 or +1: the sign shared by all four scores.
    int direction() const;

    friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;
};

struct OpinionScoreSet {
    double pmi = 0.0;
    double mi = 0.0;
    double chi = 0.0;
    double llr = 0.0;

    friend bool operator==(const OpinionScoreSet&, const OpinionScoreSet&) = default;
};

struct LabeledContext {
    std::vector<std::string> tokens;  // normalized
    bool positive = true;
};

/// n11/n12: positive/negative contexts containing `word`; n21/n22: the rest.
ContingencyTable contingency_counts(const std::string& word, std::span<const LabeledContext> contexts);

/// SO-PMI: log2(P(w|pos) / P(w|neg)). When exactly one of n11, n12 is zero the
/// word cells receive 0.5 pseudo-counts weighted by column share
/// (n1j + col_j / N), which keeps the sign and is plain add-0.5 for balanced columns.
double pmi_score(const ContingencyTable& t);
/// Count-weighted mutual information, sum O * log2(O / E).
double mi_score(const ContingencyTable& t);
/// Pearson's chi-square, sum (O - E)^2 / E.
double chi_square_score(const ContingencyTable& t);
/// Dunning's G^2, 2 * sum O * ln(O / E).
double llr_score(const ContingencyTable& t);

OpinionScoreSet opinion_scores(const ContingencyTable& t);

}  // namespace reviewforge
