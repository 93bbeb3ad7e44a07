#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "reviewforge/association.hpp"

using namespace reviewforge;

namespace {

oracle::Table as_oracle(const ContingencyTable& t)
{
    return {double(t.n11), double(t.n12), double(t.n21), double(t.n22)};
}

int sgn(double x) { return (x > 0) - (x < 0); }

LabeledContext ctx(std::vector<std::string> words, bool positive) { return {std::move(words), positive}; }

ContingencyTable random_table(std::mt19937_64& rng)
{
    std::uniform_int_distribution<std::uint64_t> cell(0, 60);
    ContingencyTable t{cell(rng), cell(rng), cell(rng), cell(rng)};
    if (t.total() == 0) t.n21 = 1;
    return t;
}

}  // namespace

TEST_CASE("fixed table (8,2,42,48)")
{
    const ContingencyTable t{8, 2, 42, 48};
    CHECK(pmi_score(t) == 2.0);
    CHECK(chi_square_score(t) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(std::abs(mi_score(t) - 3.068) <= 0.01);
    CHECK(std::abs(llr_score(t) - 4.255) <= 0.01);
    CHECK(t.direction() == 1);
}

TEST_CASE("mirrored table negates chi")
{
    CHECK(chi_square_score({2, 8, 48, 42}) == doctest::Approx(-4.0).epsilon(1e-12));
}

TEST_CASE("zero law and independence")
{
    for (const ContingencyTable t : {ContingencyTable{0, 0, 50, 50}, ContingencyTable{0, 0, 3, 0},
                                     ContingencyTable{5, 5, 45, 45}, ContingencyTable{2, 4, 8, 16}}) {
        const auto s = opinion_scores(t);
        CHECK(s.pmi == 0.0);
        CHECK(s.mi == 0.0);
        CHECK(s.chi == 0.0);
        CHECK(s.llr == 0.0);
    }
}

TEST_CASE("one-sided zero cell keeps PMI finite and signed")
{
    const ContingencyTable pos{6, 0, 44, 50};
    CHECK(std::isfinite(pmi_score(pos)));
    CHECK(pmi_score(pos) > 0);
    CHECK(pmi_score(pos.swapped()) == -pmi_score(pos));
    // balanced columns: plain add-0.5 on the word cells
    CHECK(pmi_score(pos) == doctest::Approx(std::log2(6.5 / 0.5)));
}

TEST_CASE("measures agree with cell-by-cell oracles on random tables")
{
    std::mt19937_64 rng(99);
    for (int i = 0; i < 100; ++i) {
        const auto t = random_table(rng);
        const auto o = as_oracle(t);
        const int dir = oracle::direction(t.n11, t.n12, t.n21, t.n22);
        const bool zero = (t.n11 == 0 && t.n12 == 0) || t.positive_total() == 0 || t.negative_total() == 0;
        const int want = zero ? 0 : dir;
        CHECK(t.direction() == want);
        CHECK(chi_square_score(t) == doctest::Approx(want * oracle::pearson_chi(o)).epsilon(1e-9));
        CHECK(mi_score(t) == doctest::Approx(want * std::abs(oracle::count_mi(o))).epsilon(1e-9));
        CHECK(llr_score(t) == doctest::Approx(want * std::abs(oracle::g_squared(o))).epsilon(1e-9));
        if (want != 0 && t.n11 > 0 && t.n12 > 0) CHECK(pmi_score(t) == doctest::Approx(oracle::so_pmi(o)).epsilon(1e-9));
    }
}

TEST_CASE("class-swap antisymmetry and sign coherence hold exactly")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        const auto t = random_table(rng);
        const auto a = opinion_scores(t);
        const auto b = opinion_scores(t.swapped());
        CHECK(b.pmi == -a.pmi);
        CHECK(b.mi == -a.mi);
        CHECK(b.chi == -a.chi);
        CHECK(b.llr == -a.llr);
        const int d = t.direction();
        CHECK(sgn(a.pmi) == d);
        CHECK(sgn(a.mi) == d);
        CHECK(sgn(a.chi) == d);
        CHECK(sgn(a.llr) == d);
    }
}

TEST_CASE("contingency counts from labeled contexts")
{
    std::vector<LabeledContext> contexts;
    for (int i = 0; i < 50; ++i) contexts.push_back(ctx(i < 8 ? std::vector<std::string>{"great", "great", "x"} : std::vector<std::string>{"x"}, true));
    for (int i = 0; i < 50; ++i) contexts.push_back(ctx(i < 2 ? std::vector<std::string>{"great"} : std::vector<std::string>{"y"}, false));
    CHECK(contingency_counts("great", contexts) == ContingencyTable{8, 2, 42, 48});
    CHECK(contingency_counts("absent", contexts) == ContingencyTable{0, 0, 50, 50});

    std::vector<LabeledContext> everywhere{ctx({"w"}, true), ctx({"w", "a"}, false), ctx({"w"}, false)};
    const auto t = contingency_counts("w", everywhere);
    CHECK(t.n21 == 0);
    CHECK(t.n22 == 0);
}
