#include <doctest.h>

#include "coint/series.hpp"
#include "test_helpers.hpp"

using namespace coint;

namespace {

SeriesPanel single(const std::vector<double> &x) {
    Matrix v(static_cast<Index>(x.size()), 1);
    for (Index i = 0; i < v.rows(); ++i) v(i, 0) = x[i];
    return SeriesPanel({"x"}, Period{2002, 1}, v);
}

} // namespace

TEST_CASE("period arithmetic and parsing") {
    Period p{2002, 11};
    CHECK(p.advanced(1).str() == "2002-12");
    CHECK(p.advanced(2).str() == "2003-01");
    CHECK(p.advanced(14) == Period{2004, 1});
    CHECK(Period::parse("2013-12") == Period{2013, 12});
    CHECK_THROWS_AS(Period::parse("2013-13"), LoadError);
    CHECK_THROWS_AS(Period::parse("2013/12"), LoadError);
    CHECK_THROWS_AS(Period::parse("13-12"), LoadError);
}

TEST_CASE("panel validation") {
    Matrix v = Matrix::Ones(3, 2);
    CHECK_THROWS_AS(SeriesPanel({"a", "a"}, Period{2002, 1}, v), InvalidInputError);
    CHECK_THROWS_AS(SeriesPanel({"a"}, Period{2002, 1}, v), InvalidInputError);
    Matrix bad = v;
    bad(1, 1) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(SeriesPanel({"a", "b"}, Period{2002, 1}, bad), InvalidInputError);
}

TEST_CASE("diff: ramp, identity, lag-2 hand check") {
    const SeriesPanel ramp = single({1, 2, 3, 4});
    const SeriesPanel d1 = diff(ramp, 1, 1);
    CHECK(d1.length() == 3);
    CHECK(d1.values().col(0).isApprox(Vector::Ones(3)));
    CHECK(d1.start() == Period{2002, 2}); // stamps follow the surviving rows

    const SeriesPanel same = diff(ramp, 1, 0);
    CHECK(same.values() == ramp.values());
    CHECK(same.start() == ramp.start());

    const SeriesPanel squares = single({1, 4, 9, 16, 25});
    const SeriesPanel d2 = diff(squares, 2, 1);
    CHECK(d2.length() == 3);
    CHECK(d2.values()(0, 0) == doctest::Approx(8.0));
    CHECK(d2.values()(1, 0) == doctest::Approx(12.0));
    CHECK(d2.values()(2, 0) == doctest::Approx(16.0));
}

TEST_CASE("diff: repeated single passes equal one deep pass") {
    std::mt19937_64 rng(31);
    std::vector<double> x(40);
    for (auto &v : x) v = static_cast<double>(rng() % 1000) / 100.0;
    for (int s = 1; s <= 3; ++s)
        for (int d = 1; d <= 3; ++d) {
            std::vector<double> stepwise = x;
            for (int i = 0; i < d; ++i) stepwise = diff(stepwise, s, 1);
            const std::vector<double> direct = diff(x, s, d);
            REQUIRE(stepwise.size() == direct.size());
            for (std::size_t i = 0; i < direct.size(); ++i)
                CHECK(stepwise[i] == doctest::Approx(direct[i]).epsilon(1e-14));
        }
}

TEST_CASE("diff: too-short series") {
    CHECK_THROWS_AS(diff(single({1, 2, 3}), 2, 2), SampleSizeError);
}

TEST_CASE("center: examples and random columns") {
    Matrix c(3, 1);
    c << 1, 2, 3;
    const Matrix centered = center(c);
    CHECK(centered(0, 0) == doctest::Approx(-1.0));
    CHECK(centered(1, 0) == doctest::Approx(0.0));
    CHECK(centered(2, 0) == doctest::Approx(1.0));
    CHECK(center(centered) == centered);

    std::mt19937_64 rng(37);
    const Matrix r = coint::testing::random_matrix(rng, 10, 3);
    CHECK(center(r).colwise().sum().cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("build_vecm_blocks: shapes") {
    {
        const SeriesPanel panel = single({1, 2, 4, 8, 16});
        const VecmBlocks b = build_vecm_blocks(panel, 1);
        CHECK(b.effective_sample == 4);
        CHECK(b.y.rows() == 4);
        CHECK(b.w.cols() == 0);
    }
    {
        Matrix v(5, 2);
        v << 1, 2, 2, 3, 4, 5, 7, 8, 11, 13;
        const SeriesPanel panel({"a", "b"}, Period{2002, 1}, v);
        const VecmBlocks b = build_vecm_blocks(panel, 2);
        CHECK(b.effective_sample == 3);
        CHECK(b.y.rows() == 3);
        CHECK(b.y.cols() == 2);
        CHECK(b.xlag.rows() == 3);
        CHECK(b.w.cols() == 2);
    }
    {
        Matrix v = Matrix::Constant(6, 2, 3.5);
        const SeriesPanel panel({"a", "b"}, Period{2002, 1}, v);
        const VecmBlocks b = build_vecm_blocks(panel, 2);
        CHECK(b.y.cwiseAbs().maxCoeff() == 0.0);
    }
    CHECK_THROWS_AS(build_vecm_blocks(single({1, 2}), 1), SampleSizeError);
}

TEST_CASE("build_vecm_blocks: rows align with the original panel") {
    std::mt19937_64 rng(41);
    const Matrix v = coint::testing::random_matrix(rng, 12, 3);
    const SeriesPanel panel({"a", "b", "c"}, Period{2002, 1}, v);
    for (int k = 1; k <= 3; ++k) {
        const VecmBlocks b = build_vecm_blocks(panel, k);
        for (Index i = 0; i < b.effective_sample; ++i) {
            const Index t = k + i;
            // (x_t - x_{t-1}) + x_{t-1} round-trips to within one ulp.
            CHECK((b.xlag.row(i) + b.y.row(i) - v.row(t)).cwiseAbs().maxCoeff() < 1e-14);
        }
    }
}
