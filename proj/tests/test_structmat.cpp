#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "support.hpp"

using namespace toepsyl;
using qmat = dense_matrix<rational>;
using qvec = std::vector<rational>;

namespace {

lower_toeplitz<rational> lower(qvec c) { return lower_from_coeffs<rational>(c); }

// d_1..d_{m+1}; the upper builder takes d_2..d_{m+1}
upper_toeplitz<rational> upper_of(const qvec& d) {
    return upper_from_coeffs<rational>(std::span<const rational>(d).subspan(1));
}

qmat random_lower_dense(splitmix64& rng, std::size_t m, bool nonzero_lead) {
    qvec c = testing::random_coeffs(rng, m, 9, false);
    if (nonzero_lead && c[0] == 0) {
        c[0] = 1;
    }
    return lower(c).dense();
}

} // namespace

TEST_CASE("lower_from_coeffs densifies to the triangular layout", "[structmat]") {
    CHECK(densify(lower({1})) == qmat{{1}});
    CHECK(densify(lower({1, 1})) == qmat{{1, 0}, {1, 1}});
    CHECK(densify(lower({1, 2, 3})) == qmat{{1, 0, 0}, {2, 1, 0}, {3, 2, 1}});
    CHECK_THROWS_AS(lower({}), dimension_error);
}

TEST_CASE("upper_from_coeffs reverses d_2..d_{m+1} into the first row", "[structmat]") {
    CHECK(densify(upper_of({0, 2})) == qmat{{2}});
    CHECK(densify(upper_of({0, 1, 1})) == qmat{{1, 1}, {0, 1}});
    CHECK(densify(upper_of({0, 2, 3})) == qmat{{3, 2}, {0, 3}});
    CHECK(upper_of({0, 2, 3}).row() == qvec{3, 2});
    CHECK_THROWS_AS(upper_from_coeffs<rational>(std::span<const rational>{}), dimension_error);
}

TEST_CASE("densified Toeplitz matrices have constant diagonals", "[structmat][property]") {
    splitmix64 rng(21);
    for (std::size_t m = 1; m <= 8; ++m) {
        const qvec c = testing::random_coeffs(rng, m, 9, false);
        const qmat l = lower(c).dense();
        const qmat u = upper_toeplitz<rational>(c).dense();
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                CHECK(l(i, j) == (i >= j ? c[i - j] : rational(0)));
                CHECK(u(i, j) == (j >= i ? c[j - i] : rational(0)));
            }
        }
    }
}

TEST_CASE("invert_lower examples", "[structmat]") {
    CHECK(invert_lower(lower({1, 0, 0})).column() == qvec{1, 0, 0});
    CHECK(invert_lower(lower({2})).column() == qvec{rat(1, 2)});
    const auto inv = invert_lower(lower({1, 2, 3}));
    CHECK(inv.column() == qvec{1, -2, 1});
    // oracle: Gauss-Jordan on the densification
    CHECK(inv.dense() == oracle::dense_inverse(lower({1, 2, 3}).dense()));
    CHECK_THROWS_AS(invert_lower(lower({0, 1})), singular_error);
}

TEST_CASE("invert_upper examples", "[structmat]") {
    CHECK(invert_upper(upper_toeplitz<rational>({1, 0})).row() == qvec{1, 0});
    CHECK(invert_upper(upper_toeplitz<rational>({2})).row() == qvec{rat(1, 2)});
    const auto inv = invert_upper(upper_toeplitz<rational>({3, 2}));
    CHECK(inv.dense() == qmat{{rat(1, 3), rat(-2, 9)}, {0, rat(1, 3)}});
    CHECK(inv.dense() == oracle::dense_inverse(qmat{{3, 2}, {0, 3}}));
    CHECK_THROWS_AS(invert_upper(upper_toeplitz<rational>({0, 5})), singular_error);
}

TEST_CASE("triangular Toeplitz inverses match the oracle and stay Toeplitz",
          "[structmat][property]") {
    splitmix64 rng(22);
    for (std::size_t m = 1; m <= 8; ++m) {
        for (int rep = 0; rep < 10; ++rep) {
            qvec c = testing::random_coeffs(rng, m, 9, false);
            if (c[0] == 0) {
                c[0] = rng.nonzero_in(9);
            }
            const lower_toeplitz<rational> l(c);
            const auto li = invert_lower(l);
            CHECK(l.dense() * li.dense() == identity<rational>(m));
            CHECK(li.dense() * l.dense() == identity<rational>(m));
            // oracle inverse, re-read as a Toeplitz first column, round-trips
            const qmat oracle_inv = oracle::dense_inverse(l.dense());
            CHECK(oracle_inv == li.dense());
            CHECK(lower_toeplitz<rational>(qvec(li.column())).dense() == oracle_inv);

            const upper_toeplitz<rational> u(c);
            const auto ui = invert_upper(u);
            CHECK(ui.dense() * u.dense() == identity<rational>(m));
            CHECK(ui.dense() == oracle::dense_inverse(u.dense()));
        }
    }
}

TEST_CASE("dense products and sums", "[structmat]") {
    const qmat x{{1, 2, 3}, {4, 5, 6}};
    CHECK(identity<rational>(2) * x == x);
    CHECK(qmat{{1, 0}, {1, 1}} * qmat{{3, 2}, {0, 3}} == qmat{{3, 2}, {3, 5}});
    CHECK(is_zero_matrix(x - x));
    CHECK(x + x == scaled(x, rational(2)));
    CHECK(-x + x == qmat(2, 3));
    CHECK(transpose(x) == qmat{{1, 4}, {2, 5}, {3, 6}});
    CHECK_THROWS_AS(x * x, dimension_error);
    CHECK_THROWS_AS(x - identity<rational>(2), dimension_error);
    CHECK_THROWS_AS(qmat(0, 2), dimension_error);
}

TEST_CASE("rational product agrees with the textbook triple loop", "[structmat][property]") {
    splitmix64 rng(23);
    for (int rep = 0; rep < 40; ++rep) {
        const std::size_t r = 1 + rng.below(6), k = 1 + rng.below(6), c = 1 + rng.below(6);
        const qmat a = testing::random_matrix(rng, r, k, 20);
        const qmat b = testing::random_matrix(rng, k, c, 20);
        qmat naive(r, c);
        for (std::size_t i = 0; i < r; ++i) {
            for (std::size_t j = 0; j < c; ++j) {
                rational s = 0;
                for (std::size_t t = 0; t < k; ++t) {
                    s += a(i, t) * b(t, j);
                }
                naive(i, j) = s;
            }
        }
        CHECK(a * b == naive);
    }
}

TEST_CASE("structured Toeplitz products agree with dense products", "[structmat][property]") {
    splitmix64 rng(24);
    for (std::size_t m = 1; m <= 8; ++m) {
        for (int rep = 0; rep < 5; ++rep) {
            const lower_toeplitz<rational> l1(testing::random_coeffs(rng, m, 9, false));
            const lower_toeplitz<rational> l2(testing::random_coeffs(rng, m, 9, false));
            const upper_toeplitz<rational> u1(testing::random_coeffs(rng, m, 9, false));
            const upper_toeplitz<rational> u2(testing::random_coeffs(rng, m, 9, false));
            const qmat x = testing::random_matrix(rng, m, 1 + rng.below(4));
            const qmat y = testing::random_matrix(rng, 1 + rng.below(4), m);

            CHECK((l1 * l2).dense() == l1.dense() * l2.dense());
            CHECK((u1 * u2).dense() == u1.dense() * u2.dense());
            CHECK(l1 * u1 == l1.dense() * u1.dense());
            CHECK(u1 * l1 == u1.dense() * l1.dense());
            CHECK(l1 * x == l1.dense() * x);
            CHECK(u1 * x == u1.dense() * x);
            CHECK(y * l1 == y * l1.dense());
            CHECK(y * u1 == y * u1.dense());
        }
    }
    const lower_toeplitz<double> fl({1.5, -2.0, 0.25});
    const upper_toeplitz<double> fu({2.0, 0.5, -1.0});
    CHECK(matrices_equal(fl * fu, fl.dense() * fu.dense(), eq_policy::approx(1e-15)).equal);
    CHECK(matrices_equal(fu * fl, fu.dense() * fl.dense(), eq_policy::approx(1e-15)).equal);
    CHECK_THROWS_AS(lower({1, 2}) * upper_toeplitz<rational>({1, 2, 3}), dimension_error);
}

TEST_CASE("window examples", "[structmat]") {
    const qmat i3 = identity<rational>(3);
    CHECK(window(i3, 1, 3) == i3);
    const qmat t{{0, -1, 1, 0, -1, 1}, {1, -1, 0, 1, -1, 0}};
    CHECK(window(t, 3, 2) == identity<rational>(2));
    CHECK(window(t, 5, 2) == qmat{{-1, 1}, {-1, 0}});
    CHECK_THROWS_AS(window(t, 6, 2), dimension_error);
    CHECK_THROWS_AS(window(t, 0, 2), dimension_error);
    CHECK_THROWS_AS(window(t, 1, 0), dimension_error);
    CHECK(row_block(t, 2, 1) == qmat{{1, -1, 0, 1, -1, 0}});
    CHECK_THROWS_AS(row_block(t, 2, 2), dimension_error);
}

TEST_CASE("nested windows compose", "[structmat][property]") {
    splitmix64 rng(25);
    const qmat x = testing::random_matrix(rng, 3, 9);
    for (std::size_t i = 1; i <= 9; ++i) {
        for (std::size_t w = 1; i + w - 1 <= 9; ++w) {
            const qmat inner = window(x, i, w);
            for (std::size_t j = 1; j <= w; ++j) {
                for (std::size_t v = 1; j + v - 1 <= w; ++v) {
                    CHECK(window(inner, j, v) == window(x, i + j - 1, v));
                }
            }
        }
    }
}

TEST_CASE("LU inverse agrees with the oracle", "[structmat][property]") {
    splitmix64 rng(26);
    for (std::size_t n = 1; n <= 7; ++n) {
        for (int rep = 0; rep < 5; ++rep) {
            const qmat a = random_lower_dense(rng, n, true) * transpose(random_lower_dense(rng, n, true));
            CHECK(lu_inverse(a) == oracle::dense_inverse(a));
        }
    }
    CHECK_THROWS_AS(lu_inverse(qmat{{1, 2}, {2, 4}}), singular_error);
    CHECK_THROWS_AS(lu_inverse(dense_matrix<double>{{1.0, 2.0}, {2.0, 4.0}}), singular_error);
}
