#include <set>

#include "doctest.h"
#include "lbmfd/matrix.hpp"
#include "oracles.hpp"

using namespace lbmfd;
using testutil::Rng;

namespace {

RingMatrix<LaurentPoly> rand_lp_matrix(Rng& rng, int q, int d = 1) {
    RingMatrix<LaurentPoly> m(q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) m.at(i, j) = testutil::rand_laurent(rng, d, 2, 1);
    return m;
}

RingMatrix<Coeff> rand_coeff_matrix(Rng& rng, int q, const std::vector<Param>& vars) {
    RingMatrix<Coeff> m(q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) m.at(i, j) = testutil::rand_coeff(rng, vars);
    return m;
}

}  // namespace

TEST_CASE("determinant basics") {
    // det(diag(s1..sq)) = s1 ... sq
    std::vector<Coeff> d{Coeff::param("s1"), Coeff::param("s2"), Coeff::param("s3")};
    auto m = RingMatrix<Coeff>::diagonal(d);
    CHECK(det(m) == d[0] * d[1] * d[2]);

    CHECK(det(RingMatrix<Coeff>::identity(4)) == Coeff(1));

    RingMatrix<Coeff> ab(2);
    ab.at(0, 0) = Coeff::param("a");
    ab.at(0, 1) = Coeff::param("b");
    ab.at(1, 0) = Coeff::param("c");
    ab.at(1, 1) = Coeff::param("d");
    CHECK(det(ab) == Coeff::param("a") * Coeff::param("d") - Coeff::param("b") * Coeff::param("c"));
}

TEST_CASE("determinant agrees with the Leibniz oracle") {
    Rng rng(1001);
    for (int iter = 0; iter < 20; ++iter) {
        int q = 2 + (iter % 3);
        auto m = rand_lp_matrix(rng, q);
        CHECK(det(m) == testutil::leibniz_det(m));
    }
}

TEST_CASE("adjugate satisfies the fundamental relation") {
    // adj(diag(s1,s2,s3)) = diag(s2 s3, s1 s3, s1 s2)
    Coeff s1 = Coeff::param("s1"), s2 = Coeff::param("s2"), s3 = Coeff::param("s3");
    auto s = RingMatrix<Coeff>::diagonal({s1, s2, s3});
    auto adj_s = adjugate(s);
    CHECK(adj_s.at(0, 0) == s2 * s3);
    CHECK(adj_s.at(1, 1) == s1 * s3);
    CHECK(adj_s.at(2, 2) == s1 * s2);

    CHECK(adjugate(RingMatrix<Coeff>::identity(3)) == RingMatrix<Coeff>::identity(3));

    Rng rng(2002);
    for (int iter = 0; iter < 12; ++iter) {
        int q = 2 + (iter % 3);
        auto m = rand_lp_matrix(rng, q);
        auto adj = adjugate(m);
        auto d = det(m);
        auto di = RingMatrix<LaurentPoly>::identity(q).scaled(d);
        CHECK(m * adj == di);
        CHECK(adj * m == di);
        // Cross-check against the pedestrian Laplace oracle.
        CHECK(adj == testutil::laplace_adjugate(m));
    }
}

TEST_CASE("characteristic polynomial and Cayley-Hamilton") {
    // charpoly(0_q) = X^q
    auto z = RingMatrix<Coeff>(3);
    auto cz = charpoly(z);
    CHECK(cz[3] == Coeff(1));
    CHECK(cz[2] == Coeff(0));
    CHECK(cz[1] == Coeff(0));
    CHECK(cz[0] == Coeff(0));

    // charpoly(diag(a,b)) = X^2 - (a+b) X + ab
    auto dab = RingMatrix<Coeff>::diagonal({Coeff::param("a"), Coeff::param("b")});
    auto cab = charpoly(dab);
    CHECK(cab[2] == Coeff(1));
    CHECK(cab[1] == -(Coeff::param("a") + Coeff::param("b")));
    CHECK(cab[0] == Coeff::param("a") * Coeff::param("b"));

    Rng rng(3003);
    for (int iter = 0; iter < 10; ++iter) {
        int q = 2 + (iter % 3);
        RingMatrix<OperatorPoly> m(q);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j) m.at(i, j) = testutil::rand_operator(rng, 1, 2, 1, 1);
        auto c = charpoly(m);
        // Cayley-Hamilton: sum c_k M^k = 0.
        RingMatrix<OperatorPoly> acc(q);
        RingMatrix<OperatorPoly> pw = RingMatrix<OperatorPoly>::identity(q);
        for (int k = 0; k <= q; ++k) {
            acc = acc + pw.scaled(c[static_cast<size_t>(k)]);
            if (k < q) pw = pw * m;
        }
        CHECK(acc.is_zero());
        // charpoly's determinant: det(-A) = (-1)^q det(A) = c_0.
        auto d = det(m);
        auto c0 = (q % 2 == 0) ? d : OperatorPoly::zero() - d;
        CHECK(c[0] == c0);
    }
}

TEST_CASE("adjugate from Faddeev-LeVerrier matches the cofactor route") {
    Rng rng(4004);
    for (int iter = 0; iter < 10; ++iter) {
        int q = 2 + (iter % 3);
        auto m = rand_lp_matrix(rng, q);
        RingMatrix<LaurentPoly> adj_fl(q);
        charpoly(m, &adj_fl);
        CHECK(adj_fl == adjugate(m));
    }
}

TEST_CASE("adjugate of zI - A from the characteristic polynomial identity") {
    // adj(zI - A) = sum_k (sum_l c_{k+l+1} A^l) z^k, both sides independent.
    Rng rng(5005);
    for (int iter = 0; iter < 6; ++iter) {
        int q = 2 + (iter % 3);
        RingMatrix<OperatorPoly> a(q);
        for (int i = 0; i < q; ++i)
            for (int j = 0; j < q; ++j)
                a.at(i, j) = to_operator(testutil::rand_laurent(rng, 1, 2, 1));
        auto zi = RingMatrix<OperatorPoly>::identity(q).scaled(time_shift());
        auto lhs = adjugate(zi - a);
        auto c = charpoly(a);
        RingMatrix<OperatorPoly> rhs(q);
        for (int k = 0; k <= q - 1; ++k) {
            RingMatrix<OperatorPoly> inner(q);
            RingMatrix<OperatorPoly> pw = RingMatrix<OperatorPoly>::identity(q);
            for (int l = 0; l <= q - 1 - k; ++l) {
                inner = inner + pw.scaled(c[static_cast<size_t>(k + l + 1)]);
                if (l < q - 1 - k) pw = pw * a;
            }
            rhs = rhs + inner.scaled(time_shift(k));
        }
        CHECK(lhs == rhs);
    }
}

TEST_CASE("cut keeps the named block") {
    RingMatrix<Coeff> ones(3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ones.at(i, j) = Coeff(1);

    std::set<int> all{0, 1, 2};
    CHECK(ones.cut(all) == ones);
    CHECK(ones.cut({}).is_zero());

    auto c = ones.cut({0, 2});
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            bool kept = (i != 1 && j != 1);
            CHECK(c.at(i, j) == (kept ? Coeff(1) : Coeff(0)));
        }
}

TEST_CASE("rank-one determinant update") {
    auto i2 = RingMatrix<Coeff>::identity(2);
    std::vector<Coeff> e1{Coeff(1), Coeff(0)};
    CHECK(det_rank_one_update(i2, e1, e1) == Coeff(2));

    auto d01 = RingMatrix<Coeff>::diagonal({Coeff(0), Coeff(1)});
    CHECK(det_rank_one_update(d01, e1, e1) == Coeff(1));

    Rng rng(6006);
    std::vector<Param> vars{Param("s1"), Param("lambda")};
    for (int iter = 0; iter < 8; ++iter) {
        auto c = rand_coeff_matrix(rng, 3, vars);
        std::vector<Coeff> u, v;
        for (int k = 0; k < 3; ++k) {
            u.push_back(testutil::rand_coeff(rng, vars));
            v.push_back(testutil::rand_coeff(rng, vars));
        }
        // Direct determinant of the updated matrix as the oracle.
        RingMatrix<Coeff> upd = c;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                upd.at(i, j) += u[static_cast<size_t>(i)] * v[static_cast<size_t>(j)];
        CHECK(det_rank_one_update(c, u, v) == testutil::leibniz_det(upd));
    }
}

TEST_CASE("cut determinant carries the z^(N-1) factor") {
    // For a matrix cut to {i} u {N+1..q}, det(zI - cut) as a polynomial in z
    // is divisible by z^(N-1), and exactly so whenever the kept block has a
    // nonzero determinant (the generic case).
    Rng rng(7007);
    int q = 4, N = 2;
    RingMatrix<OperatorPoly> a(q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            LaurentPoly e;
            do {
                e = testutil::rand_laurent(rng, 1, 2, 1);
            } while (e.is_zero());
            a.at(i, j) = to_operator(e);
        }
    for (int i = 0; i < N; ++i) {
        std::set<int> keep{i};
        for (int k = N; k < q; ++k) keep.insert(k);
        auto ai = a.cut(keep);
        auto zi = RingMatrix<OperatorPoly>::identity(q).scaled(time_shift());
        auto d = det(zi - ai);
        CHECK(min_time_degree(d) >= N - 1);
        auto reduced = shift_time_down(d, N - 1);
        CHECK(max_time_degree(reduced) == q + 1 - N);
        CHECK(time_coeff(reduced, q + 1 - N) == LaurentPoly::one());
        // Constant-in-z coefficient of the quotient is (-1)^(q+1-N) times the
        // determinant of the kept block; nonzero here, so the factor is exact.
        RingMatrix<OperatorPoly> block(q + 1 - N);
        std::vector<int> idx(keep.begin(), keep.end());
        for (size_t r = 0; r < idx.size(); ++r)
            for (size_t c = 0; c < idx.size(); ++c)
                block.at(static_cast<int>(r), static_cast<int>(c)) =
                    a.at(idx[r], idx[c]);
        auto block_det = det(block);
        REQUIRE(!block_det.is_zero());
        auto c0 = time_coeff(reduced, 0);
        auto expect = ((q + 1 - N) % 2 == 0) ? block_det : OperatorPoly::zero() - block_det;
        CHECK(to_operator(c0) == expect);
        CHECK(min_time_degree(d) == N - 1);
    }
}
