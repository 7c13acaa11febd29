#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <set>
#include <vector>

#include "qd/group.hpp"
#include "qd/rep_theory.hpp"

namespace {

using qd::cplx;

const cplx kOmega = std::polar(1.0, 2.0 * M_PI / 3.0);
const cplx kOmegaBar = std::conj(kOmega);

double max_abs_diff(const qd::ClassFunction& a,
                    const std::vector<cplx>& b) {
  REQUIRE(a.size() == b.size());
  double dev = 0.0;
  for (size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
  return dev;
}

/// Independent orthogonality oracle: first (row) and second (column)
/// orthogonality relations evaluated directly from the table data.
void check_orthogonality(const qd::FiniteGroup& g,
                         const qd::CharacterTable& t) {
  const int k = t.num_irreps();
  REQUIRE(t.num_classes() == k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      cplx row = 0.0;
      for (int l = 0; l < k; ++l)
        row += static_cast<double>(t.class_sizes[l]) * t.chi[i][l] *
               std::conj(t.chi[j][l]);
      row /= static_cast<double>(g.order());
      CHECK(std::abs(row - (i == j ? 1.0 : 0.0)) < 1e-9);
    }
  for (int l = 0; l < k; ++l)
    for (int m = 0; m < k; ++m) {
      cplx col = 0.0;
      for (int i = 0; i < k; ++i)
        col += t.chi[i][l] * std::conj(t.chi[i][m]);
      const double target =
          (l == m) ? static_cast<double>(g.order()) / t.class_sizes[l] : 0.0;
      CHECK(std::abs(col - target) < 1e-9);
    }
  long sum_sq = 0;
  for (int d : t.dims) sum_sq += static_cast<long>(d) * d;
  CHECK(sum_sq == g.order());
  const int ce = g.class_of(0);
  for (int i = 0; i < k; ++i)
    CHECK(std::abs(t.chi[i][ce] - static_cast<double>(t.dims[i])) < 1e-9);
}

std::multiset<int> dim_multiset(const qd::CharacterTable& t) {
  return {t.dims.begin(), t.dims.end()};
}

/// Reciprocity oracle: evaluates both sides of
/// <Ind chi, psi>_G = <chi, Res psi>_H from scratch.
void check_reciprocity(const qd::FiniteGroup& g, const qd::Subgroup& sub,
                       const qd::FiniteGroup& subg) {
  const auto tg = qd::character_table(g);
  const auto th = qd::character_table(subg);
  for (int i = 0; i < th.num_irreps(); ++i)
    for (int j = 0; j < tg.num_irreps(); ++j) {
      const auto ind = qd::induce_character(g, sub, subg, th.chi[i]);
      const auto res = qd::restrict_character(g, tg.chi[j], sub, subg);
      const cplx lhs = qd::inner_product(g, ind, tg.chi[j]);
      const cplx rhs = qd::inner_product(subg, th.chi[i], res);
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

}  // namespace

TEST_CASE("character table of the six-element nonabelian group is exact") {
  const auto g = qd::s3_presented();
  const auto t = qd::character_table(g);

  REQUIRE(t.num_irreps() == 3);
  CHECK(t.group_order == 6);
  CHECK(t.class_labels == std::vector<std::string>{"C_e", "C_y", "C_x"});
  CHECK(t.class_sizes == std::vector<int>{1, 2, 3});
  CHECK(t.labels == std::vector<std::string>{"Gamma_1", "Gamma_-1", "Gamma_2"});
  CHECK(t.dims == std::vector<int>{1, 1, 2});

  CHECK(max_abs_diff(t.chi[0], {1, 1, 1}) < 1e-9);
  CHECK(max_abs_diff(t.chi[1], {1, 1, -1}) < 1e-9);
  CHECK(max_abs_diff(t.chi[2], {2, -1, 0}) < 1e-9);

  CHECK(t.trivial_index() == 0);
  CHECK(t.index_of("Gamma_2") == 2);
  CHECK_THROWS_AS(t.index_of("Gamma_3"), qd::ArgumentError);
}

TEST_CASE("character tables of small cyclic groups are exact") {
  SECTION("order two") {
    const auto t = qd::character_table(qd::cyclic_group(2));
    CHECK(t.labels == std::vector<std::string>{"Gamma_1", "Gamma_-1"});
    CHECK(max_abs_diff(t.chi[0], {1, 1}) < 1e-12);
    CHECK(max_abs_diff(t.chi[1], {1, -1}) < 1e-12);
  }
  SECTION("order three") {
    const auto t = qd::character_table(qd::cyclic_group(3));
    CHECK(t.labels ==
          std::vector<std::string>{"Gamma_1", "Gamma_w", "Gamma_wb"});
    CHECK(max_abs_diff(t.chi[0], {1, 1, 1}) < 1e-12);
    CHECK(max_abs_diff(t.chi[1], {1, kOmega, kOmegaBar}) < 1e-12);
    CHECK(max_abs_diff(t.chi[2], {1, kOmegaBar, kOmega}) < 1e-12);
  }
  SECTION("order four labels by exponent") {
    const auto g = qd::cyclic_group(4);
    const auto t = qd::character_table(g);
    const int r = t.index_of("Gamma_w1");
    CHECK(std::abs(t.chi[r][g.class_of(1)] - cplx(0, 1)) < 1e-12);
    CHECK(std::abs(t.chi[t.index_of("Gamma_w2")][g.class_of(1)] - cplx(-1, 0)) <
          1e-12);
    CHECK(std::abs(t.chi[t.index_of("Gamma_w3")][g.class_of(1)] - cplx(0, -1)) <
          1e-12);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(t.chi[i][0] - 1.0) < 1e-12);
  }
  SECTION("trivial group") {
    const auto t = qd::character_table(qd::cyclic_group(1));
    REQUIRE(t.num_irreps() == 1);
    CHECK(t.labels[0] == "Gamma_1");
    CHECK(std::abs(t.chi[0][0] - 1.0) < 1e-15);
  }
}

TEST_CASE("orthogonality relations hold across builtin groups") {
  for (const char* name : {"s3", "z2", "z3", "z4", "z6", "d4", "d6", "s4"}) {
    INFO("group " << name);
    const auto g = qd::builtin_group(name);
    check_orthogonality(g, qd::character_table(g));
  }
}

TEST_CASE("irrep dimension multisets match the classical values") {
  CHECK(dim_multiset(qd::character_table(qd::builtin_group("s3"))) ==
        std::multiset<int>{1, 1, 2});
  CHECK(dim_multiset(qd::character_table(qd::builtin_group("d4"))) ==
        std::multiset<int>{1, 1, 1, 1, 2});
  CHECK(dim_multiset(qd::character_table(qd::builtin_group("s4"))) ==
        std::multiset<int>{1, 1, 2, 3, 3});
  CHECK(dim_multiset(qd::character_table(qd::builtin_group("d6"))) ==
        std::multiset<int>{1, 1, 1, 1, 2, 2});
  CHECK(dim_multiset(qd::character_table(qd::builtin_group("s5"))) ==
        std::multiset<int>{1, 1, 4, 4, 5, 5, 6});
  CHECK(dim_multiset(qd::character_table(qd::builtin_group("z6"))) ==
        std::multiset<int>{1, 1, 1, 1, 1, 1});
}

TEST_CASE("restriction to centralizers splits as expected") {
  const auto g = qd::s3_presented();
  const auto t = qd::character_table(g);
  const auto ny = g.normalizer(1);   // {e, y, y2}
  const auto nyg = qd::subgroup_as_group(g, ny, "ny");
  const auto tny = qd::character_table(nyg);
  const auto nx = g.normalizer(3);   // {e, x}
  const auto nxg = qd::subgroup_as_group(g, nx, "nx");
  const auto tnx = qd::character_table(nxg);

  SECTION("two-dimensional irrep over the order-three centralizer") {
    const auto res = qd::restrict_character(g, t.chi[2], ny, nyg);
    CHECK(qd::decompose(nyg, tny, res) == std::vector<int>{0, 1, 1});
  }
  SECTION("two-dimensional irrep over the order-two centralizer") {
    const auto res = qd::restrict_character(g, t.chi[2], nx, nxg);
    CHECK(qd::decompose(nxg, tnx, res) == std::vector<int>{1, 1});
  }
  SECTION("sign irrep restricts to the trivial character of the rotations") {
    const auto res = qd::restrict_character(g, t.chi[1], ny, nyg);
    CHECK(max_abs_diff(res, {1, 1, 1}) < 1e-12);
    CHECK(qd::decompose(nyg, tny, res) == std::vector<int>{1, 0, 0});
  }
  SECTION("trivial character restricts to the trivial character everywhere") {
    for (const auto& sub : {ny, nx, g.subgroup({0})}) {
      const auto subg = qd::subgroup_as_group(g, sub, "h");
      const auto res = qd::restrict_character(g, t.chi[0], sub, subg);
      for (const cplx& v : res) CHECK(std::abs(v - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("induction from subgroups matches the Frobenius formula") {
  const auto g = qd::s3_presented();
  const auto t = qd::character_table(g);
  const auto ny = g.normalizer(1);
  const auto nyg = qd::subgroup_as_group(g, ny, "ny");
  const auto nx = g.normalizer(3);
  const auto nxg = qd::subgroup_as_group(g, nx, "nx");

  SECTION("trivial character of the order-three centralizer") {
    const qd::ClassFunction triv(nyg.num_classes(), 1.0);
    const auto ind = qd::induce_character(g, ny, nyg, triv);
    CHECK(qd::decompose(g, t, ind) == std::vector<int>{1, 1, 0});
  }
  SECTION("trivial character of the order-two centralizer") {
    const qd::ClassFunction triv(nxg.num_classes(), 1.0);
    const auto ind = qd::induce_character(g, nx, nxg, triv);
    CHECK(qd::decompose(g, t, ind) == std::vector<int>{1, 0, 1});
    // Cross-check each multiplicity by reciprocity against the restriction.
    for (int j = 0; j < 3; ++j) {
      const auto res = qd::restrict_character(g, t.chi[j], nx, nxg);
      cplx rhs = 0.0;
      for (size_t c = 0; c < res.size(); ++c)
        rhs += static_cast<double>(
                   nxg.conjugacy_classes()[c].members.size()) *
               std::conj(res[c]);
      rhs /= static_cast<double>(nxg.order());
      CHECK(std::abs(qd::inner_product(g, ind, t.chi[j]) - rhs) < 1e-12);
    }
  }
  SECTION("inducing from the trivial subgroup gives the regular character") {
    const auto sub = g.subgroup({0});
    const auto subg = qd::subgroup_as_group(g, sub, "e");
    const auto ind = qd::induce_character(g, sub, subg, {1.0});
    CHECK(max_abs_diff(ind, {6, 0, 0}) < 1e-12);
    CHECK(max_abs_diff(qd::regular_character(g), {6, 0, 0}) == 0.0);
    CHECK(qd::decompose(g, t, ind) == std::vector<int>{1, 1, 2});
  }
}

TEST_CASE("Frobenius reciprocity holds for every subgroup") {
  const auto g = qd::s3_presented();
  const std::vector<std::vector<int>> subgroup_elements = {
      {0}, {0, 3}, {0, 4}, {0, 5}, {0, 1, 2}, {0, 1, 2, 3, 4, 5}};
  for (const auto& elems : subgroup_elements) {
    INFO("subgroup of order " << elems.size());
    const auto sub = g.subgroup(elems);
    const auto subg = qd::subgroup_as_group(g, sub, "h");
    check_reciprocity(g, sub, subg);
  }
}

TEST_CASE("decompose validates integrality and nonnegativity") {
  const auto g = qd::s3_presented();
  const auto t = qd::character_table(g);

  CHECK_THROWS_AS(qd::decompose(g, t, {1.0, 0.5, 0.0}),
                  qd::NotACharacterError);

  qd::ClassFunction diff(3);
  for (int l = 0; l < 3; ++l) diff[l] = t.chi[2][l] - t.chi[0][l];
  CHECK_THROWS_AS(qd::decompose(g, t, diff), qd::NotACharacterError);

  qd::ClassFunction combo(3);
  for (int l = 0; l < 3; ++l) combo[l] = 3.0 * t.chi[0][l] + 2.0 * t.chi[2][l];
  CHECK(qd::decompose(g, t, combo) == std::vector<int>{3, 0, 2});

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(std::abs(qd::inner_product(g, t.chi[i], t.chi[j]) -
                     (i == j ? 1.0 : 0.0)) < 1e-12);
}

TEST_CASE("regular characters decompose with multiplicity equal to dimension") {
  for (const char* name : {"s3", "d4", "z4", "s4"}) {
    INFO("group " << name);
    const auto g = qd::builtin_group(name);
    const auto t = qd::character_table(g);
    const auto mult = qd::decompose(g, t, qd::regular_character(g));
    CHECK(mult == t.dims);
  }
}

TEST_CASE("builtin explicit matrices are homomorphisms with matching traces") {
  for (const char* name : {"z2", "z3", "z5", "s3"}) {
    INFO("group " << name);
    const auto g = qd::builtin_group(name);
    const auto t = qd::character_table(g);
    const auto reps = qd::builtin_irreps(g);
    REQUIRE(static_cast<int>(reps.size()) == t.num_irreps());
    for (int r = 0; r < t.num_irreps(); ++r) {
      CHECK(reps[r].label == t.labels[r]);
      CHECK(reps[r].dim == t.dims[r]);
      CHECK(qd::irrep_deviation(g, reps[r], t.chi[r]) < 1e-10);
    }
  }

  SECTION("two-dimensional matrices take their conventional values") {
    const auto reps = qd::builtin_irreps(qd::s3_presented());
    const auto& two = reps[2];
    REQUIRE(two.dim == 2);
    CHECK(std::abs(two.matrices[1](0, 0) - kOmegaBar) < 1e-12);  // rotation
    CHECK(std::abs(two.matrices[1](1, 1) - kOmega) < 1e-12);
    CHECK(std::abs(two.matrices[3](0, 1) - 1.0) < 1e-12);        // reflection
    CHECK(std::abs(two.matrices[4](0, 1) - kOmega) < 1e-12);
    CHECK(std::abs(two.matrices[4](1, 0) - kOmegaBar) < 1e-12);
    CHECK(std::abs(two.matrices[5](0, 1) - kOmegaBar) < 1e-12);
    CHECK(std::abs(two.matrices[1](0, 1)) < 1e-12);
  }
  SECTION("groups without bundled matrices return an empty list") {
    CHECK(qd::builtin_irreps(qd::builtin_group("d4")).empty());
  }
}

TEST_CASE("group-averaged tensor products collapse to the swap identity") {
  const auto g = qd::s3_presented();
  const auto reps = qd::builtin_irreps(g);

  // Same irrep: sum equals (|G|/d) * Swap.
  CHECK(qd::verify_got_swap(g, reps[2], reps[2]) < 1e-12);
  CHECK(qd::verify_got_swap(g, reps[0], reps[0]) < 1e-12);
  CHECK(qd::verify_got_swap(g, reps[1], reps[1]) < 1e-12);
  // Distinct irreps: sum vanishes.
  CHECK(qd::verify_got_swap(g, reps[0], reps[1]) < 1e-12);
  CHECK(qd::verify_got_swap(g, reps[0], reps[2]) < 1e-12);
  CHECK(qd::verify_got_swap(g, reps[2], reps[1]) < 1e-12);

  // Direct value check for the two-dimensional case: the sum is 3 * Swap.
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(4, 4);
  for (int x = 0; x < 6; ++x)
    acc += qd::kron(reps[2].matrices[x], reps[2].matrices[g.inverse(x)]);
  Eigen::MatrixXcd swap(4, 4);
  swap << 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1;
  CHECK((acc - 3.0 * swap).cwiseAbs().maxCoeff() < 1e-12);

  SECTION("cyclic groups") {
    const auto z3 = qd::cyclic_group(3);
    const auto zreps = qd::builtin_irreps(z3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        CHECK(qd::verify_got_swap(z3, zreps[i], zreps[j]) < 1e-12);
  }
  SECTION("trivial group") {
    const auto e = qd::cyclic_group(1);
    const auto ereps = qd::builtin_irreps(e);
    CHECK(qd::verify_got_swap(e, ereps[0], ereps[0]) < 1e-15);
  }
}

TEST_CASE("class bundles expose centralizer tables and conjugators") {
  const auto g = qd::s3_presented();

  const auto rot = qd::class_theory(g, 1);
  CHECK(rot.group.order() == 3);
  CHECK(rot.table.labels ==
        std::vector<std::string>{"Gamma_1", "Gamma_w", "Gamma_wb"});
  const auto& rot_members = g.conjugacy_classes()[1].members;
  for (size_t p = 0; p < rot_members.size(); ++p)
    CHECK(g.conjugate(rot.conjugators[p], 1) == rot_members[p]);

  const auto ref = qd::class_theory(g, 2);
  CHECK(ref.group.order() == 2);
  CHECK(ref.table.labels == std::vector<std::string>{"Gamma_1", "Gamma_-1"});
  const auto& ref_members = g.conjugacy_classes()[2].members;
  for (size_t p = 0; p < ref_members.size(); ++p)
    CHECK(g.conjugate(ref.conjugators[p], 3) == ref_members[p]);

  // The identity's centralizer is the whole group and keeps its labels.
  const auto idc = qd::class_theory(g, 0);
  CHECK(idc.group.order() == 6);
  CHECK(idc.table.labels ==
        std::vector<std::string>{"Gamma_1", "Gamma_-1", "Gamma_2"});

  CHECK_THROWS_AS(qd::class_theory(g, 7), qd::ArgumentError);
}

TEST_CASE("transported characters are independent of the conjugator choice") {
  const auto g = qd::s3_presented();
  const auto ct = qd::class_theory(g, 1);
  const auto& members = g.conjugacy_classes()[1].members;

  for (size_t pos = 0; pos < members.size(); ++pos) {
    const int m = members[pos];
    const auto nm = g.normalizer(m);
    for (int r = 0; r < ct.table.num_irreps(); ++r) {
      for (int x : nm.elements) {
        const cplx got = qd::transported_chi(g, ct, r, static_cast<int>(pos), x);
        // Oracle: evaluate with every valid conjugator and demand agreement.
        int checked = 0;
        for (int k = 0; k < g.order(); ++k) {
          if (g.conjugate(k, 1) != m) continue;
          const int moved = g.conjugate(g.inverse(k), x);
          const int local = ct.centralizer.local(moved);
          REQUIRE(local >= 0);
          const cplx expect = ct.table.chi[r][ct.group.class_of(local)];
          CHECK(std::abs(got - expect) < 1e-12);
          ++checked;
        }
        CHECK(checked == 3);  // |G| / |class| conjugators per member
      }
    }
  }

  // At the representative itself the transport is the identity map.
  for (int r = 0; r < 3; ++r)
    for (int x : ct.centralizer.elements) {
      const int local = ct.centralizer.local(x);
      CHECK(std::abs(qd::transported_chi(g, ct, r, 0, x) -
                     ct.table.chi[r][ct.group.class_of(local)]) < 1e-12);
    }

  CHECK_THROWS_AS(qd::transported_chi(g, ct, 0, 0, 3), qd::ArgumentError);
}

TEST_CASE("character table rejects oversized groups") {
  CHECK_THROWS_AS(qd::character_table(qd::builtin_group("s4"), 10),
                  qd::CapacityError);
}

TEST_CASE("class labels name classes by their representative") {
  const auto g = qd::s3_presented();
  CHECK(qd::class_label(g, 0) == "C_e");
  CHECK(qd::class_label(g, 1) == "C_y");
  CHECK(qd::class_label(g, 2) == "C_x");
  CHECK_THROWS_AS(qd::class_label(g, 3), qd::ArgumentError);
}
