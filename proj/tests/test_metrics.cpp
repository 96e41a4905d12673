#include <doctest.h>

#include "minebench/metrics.hpp"
#include "minebench/rng.hpp"
#include "test_helpers.hpp"

using namespace minebench;
using namespace minebench::test;

namespace {

// Independent oracle: per-cell enumeration with its own rational arithmetic,
// sharing nothing with the library path it checks.
struct OracleReport {
    long long tp = 0, tn = 0, fp = 0, fn = 0;
    Fraction accuracy, precision, recall, f1;
};

OracleReport oracle_grade(const AccessMatrix& original, const AccessMatrix& reconstructed) {
    OracleReport o;
    for (int i = 0; i < original.n_subjects(); ++i) {
        for (int j = 0; j < original.n_objects(); ++j) {
            int truth = original.at(i, j);
            int mined = reconstructed.at(i, j);
            if (truth == 1 && mined == 1) ++o.tp;
            if (truth == 0 && mined == 0) ++o.tn;
            if (truth == 0 && mined == 1) ++o.fp;
            if (truth == 1 && mined == 0) ++o.fn;
        }
    }
    long long total = o.tp + o.tn + o.fp + o.fn;
    o.accuracy = Fraction(o.tp + o.tn, total);
    if (o.tp + o.fp == 0) {
        o.precision = o.tp + o.fn == 0 ? Fraction::whole(1) : Fraction::whole(0);
    } else {
        o.precision = Fraction(o.tp, o.tp + o.fp);
    }
    o.recall = o.tp + o.fn == 0 ? Fraction::whole(1) : Fraction(o.tp, o.tp + o.fn);
    Fraction sum = o.precision + o.recall;
    o.f1 = sum.num() == 0 ? Fraction::whole(0)
                          : Fraction::whole(2) * o.precision * o.recall / sum;
    return o;
}

AccessMatrix random_matrix(Rng& rng, int n, int m) {
    std::vector<std::uint8_t> cells;
    for (int i = 0; i < n * m; ++i) {
        cells.push_back(static_cast<std::uint8_t>(rng.uniform_int(0, 1)));
    }
    return AccessMatrix(n, m, std::move(cells));
}

} // namespace

TEST_SUITE("metrics") {

TEST_CASE("identical matrices give a clean confusion") {
    std::vector<std::uint8_t> cells(225, 0);
    for (int i = 0; i < 29; ++i) cells[static_cast<std::size_t>(i)] = 1;
    AccessMatrix m(15, 15, cells);
    ConfusionCounts c = confusion(m, m);
    CHECK(c == ConfusionCounts{29, 196, 0, 0});
}

TEST_CASE("complement flips everything") {
    std::vector<std::uint8_t> cells(225, 0);
    for (int i = 0; i < 29; ++i) cells[static_cast<std::size_t>(i)] = 1;
    std::vector<std::uint8_t> inverted;
    for (std::uint8_t c : cells) inverted.push_back(c ? 0 : 1);
    ConfusionCounts c = confusion(AccessMatrix(15, 15, cells), AccessMatrix(15, 15, inverted));
    CHECK(c == ConfusionCounts{0, 0, 196, 29});
}

TEST_CASE("hand-enumerated 3x3 case") {
    // original ones at (0,0),(1,1),(2,2); reconstructed ones at (0,0),(0,1)
    AccessMatrix original(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1});
    AccessMatrix reconstructed(3, 3, {1, 1, 0, 0, 0, 0, 0, 0, 0});
    ConfusionCounts c = confusion(original, reconstructed);
    CHECK(c == ConfusionCounts{1, 5, 1, 2});
}

TEST_CASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(confusion(AccessMatrix::zeros(2, 2), AccessMatrix::zeros(2, 3)),
                    DimensionMismatch);
}

TEST_CASE("perfect counts give the all-ones report with ratio 0.2") {
    MetricsReport r = score({29, 196, 0, 0}, 2, 10);
    CHECK(r.accuracy == Fraction::whole(1));
    CHECK(r.precision == Fraction::whole(1));
    CHECK(r.recall == Fraction::whole(1));
    CHECK(r.f1 == Fraction::whole(1));
    CHECK(r.size_ratio == Fraction(1, 5));
    CHECK(r.size_ratio_rounded() == "0.2");
}

TEST_CASE("all-deny mining of a sparse matrix reproduces the degenerate row") {
    // nothing mined on a 29-ones matrix: precision, recall, f1 all 0.00 and
    // accuracy 196/225 = 0.87
    MetricsReport r = score({0, 196, 0, 29}, 11, 10);
    CHECK(r.precision == Fraction::whole(0));
    CHECK(r.recall == Fraction::whole(0));
    CHECK(r.f1 == Fraction::whole(0));
    CHECK(r.accuracy == Fraction(196, 225));
    CHECK(r.accuracy.value() == doctest::Approx(0.871).epsilon(0.001));
}

TEST_CASE("empty policy on a zero-ones matrix is vacuously perfect") {
    MetricsReport r = score({0, 100, 0, 0}, 0, 10);
    CHECK(r.accuracy == Fraction::whole(1));
    CHECK(r.precision == Fraction::whole(1));
    CHECK(r.recall == Fraction::whole(1));
    CHECK(r.f1 == Fraction::whole(1));
}

TEST_CASE("0.99 accuracy on 10000 cells means exactly 100 misclassified") {
    Rng rng(2024);
    for (int trial = 0; trial < 50; ++trial) {
        long long wrong = 100;
        long long fp = rng.uniform_int(0, 100);
        long long fn = wrong - fp;
        long long tp = rng.uniform_int(0, 1000);
        long long tn = 10000 - wrong - tp;
        MetricsReport r = score({tp, tn, fp, fn}, 10, 10);
        CHECK(r.accuracy == Fraction(99, 100));
        CHECK(r.counts.fp + r.counts.fn == 100);
    }
    // and conversely: accuracy exactly 0.99 forces fp+fn = 100
    MetricsReport r = score({500, 9400, 60, 40}, 10, 10);
    CHECK(r.accuracy == Fraction(99, 100));
    CHECK(r.counts.fp + r.counts.fn == 100);
}

TEST_CASE("invalid counts are rejected") {
    CHECK_THROWS_AS(score({0, 0, 0, 0}, 1, 1), InvalidCounts);
    CHECK_THROWS_AS(score({-1, 2, 0, 0}, 1, 1), InvalidCounts);
    CHECK_THROWS_AS(score({1, 1, 1, 1}, 1, 0), InvalidCounts);
}

TEST_CASE("library metrics match the independent oracle exactly") {
    Rng rng(55);
    for (int trial = 0; trial < 100; ++trial) {
        AccessMatrix original = random_matrix(rng, 10, 10);
        AccessMatrix reconstructed = random_matrix(rng, 10, 10);
        OracleReport expected = oracle_grade(original, reconstructed);
        ConfusionCounts c = confusion(original, reconstructed);
        MetricsReport r = score(c, 5, 10);
        CHECK(c.tp == expected.tp);
        CHECK(c.tn == expected.tn);
        CHECK(c.fp == expected.fp);
        CHECK(c.fn == expected.fn);
        CHECK(r.accuracy == expected.accuracy);
        CHECK(r.precision == expected.precision);
        CHECK(r.recall == expected.recall);
        CHECK(r.f1 == expected.f1);
    }
}

TEST_CASE("metrics are scale-free") {
    ConfusionCounts base{12, 60, 5, 3};
    MetricsReport r1 = score(base, 4, 10);
    for (long long k : {2, 7, 100}) {
        MetricsReport rk = score({base.tp * k, base.tn * k, base.fp * k, base.fn * k}, 4, 10);
        CHECK(rk.accuracy == r1.accuracy);
        CHECK(rk.precision == r1.precision);
        CHECK(rk.recall == r1.recall);
        CHECK(rk.f1 == r1.f1);
    }
}

TEST_CASE("f1 bounds and harmonic-mean identity") {
    Rng rng(66);
    for (int trial = 0; trial < 200; ++trial) {
        ConfusionCounts c{rng.uniform_int(0, 50), rng.uniform_int(0, 50), rng.uniform_int(0, 50),
                          rng.uniform_int(0, 50)};
        if (c.total() == 0) continue;
        MetricsReport r = score(c, 3, 10);
        CHECK(r.f1 <= Fraction::whole(2) * r.precision);
        CHECK(r.f1 <= Fraction::whole(2) * r.recall);
        Fraction sum = r.precision + r.recall;
        if (sum.num() != 0) {
            CHECK(r.f1 == Fraction::whole(2) * r.precision * r.recall / sum);
        }
    }
}

TEST_CASE("size ratio is reported exact and rounded") {
    MetricsReport r = score({1, 1, 1, 1}, 13, 10);
    CHECK(r.size_ratio == Fraction(13, 10));
    CHECK(r.size_ratio_rounded() == "1.3");
    CHECK(score({1, 1, 1, 1}, 56, 10).size_ratio_rounded() == "5.6");
    CHECK(score({1, 1, 1, 1}, 1, 20).size_ratio_rounded() == "0.1");
}

TEST_CASE("report serializes to flat json") {
    MetricsReport r = score({29, 196, 0, 0}, 2, 10);
    std::string json = r.to_json();
    CHECK(json.find("\"tp\":29") != std::string::npos);
    CHECK(json.find("\"accuracy\":1.0") != std::string::npos);
    CHECK(json.find("\"size_ratio_exact\":\"1/5\"") != std::string::npos);
    CHECK(json.find("\"size_ratio_rounded\":\"0.2\"") != std::string::npos);
}

} // TEST_SUITE
