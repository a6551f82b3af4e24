// SPDX-License-Identifier: Apache-2.0

#include "oracles.hpp"

#include "wcmo/mesh.hpp"

#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>

using namespace wcmo;

namespace
{

double leaf_area(const Mesh &m)
{
  double a = 0.0;
  for (int id = 0; id < int(m.size()); ++id)
    a += m.cell_rect(id).area();
  return a;
}

Mesh random_refinement(const Domain &d, int level, int rounds, std::mt19937 &rng)
{
  Mesh m = uniform_mesh(d, level);
  for (int r = 0; r < rounds; ++r)
  {
    std::uniform_int_distribution<int> pick(0, int(m.size()) - 1);
    std::vector<int> marked = {pick(rng), pick(rng)};
    std::sort(marked.begin(), marked.end());
    marked.erase(std::unique(marked.begin(), marked.end()), marked.end());
    m = refine(m, marked);
  }
  return m;
}

} // namespace

TEST_SUITE("mesh")
{
  TEST_CASE("uniform meshes")
  {
    CHECK(uniform_mesh(Domain::unit_square(), 2).size() == 16);
    CHECK(uniform_mesh(Domain::l_shape(), 1).size() == 3);
    const Mesh root = uniform_mesh(Domain::unit_square(), 0);
    REQUIRE(root.size() == 1);
    CHECK(root.cell_rect(0) == Domain::unit_square().bounds());
    CHECK(uniform_mesh(Domain::bi_unit_square(), 3).h_min() == 0.25);
    CHECK_THROWS_AS(uniform_mesh(Domain::unit_square(), -1), std::invalid_argument);
  }

  TEST_CASE("domain validation")
  {
    CHECK_THROWS_AS(Domain::square(1.0, 0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Domain::square(0.0, INFINITY, 0.0, 1.0), std::invalid_argument);
    const Domain l = Domain::l_shape();
    CHECK(l.contains(Point{-0.5, -0.5}));
    CHECK(l.contains(Point{0.5, 0.5}));
    CHECK_FALSE(l.contains(Point{0.5, -0.5}));
    CHECK(l.area() == doctest::Approx(3.0));
  }

  TEST_CASE("refine marks and closes")
  {
    const Mesh m = uniform_mesh(Domain::unit_square(), 1);
    const int one[] = {0};
    CHECK(refine(m, one).size() == 7);
    CHECK(refine(m, std::span<const int>{}) == m);
    const int bad[] = {4};
    CHECK_THROWS_AS(refine(m, bad), std::invalid_argument);
  }

  TEST_CASE("repeated point refinement matches brute-force closure")
  {
    const Domain d = Domain::unit_square();
    for (Point target : {Point{1e-9, 1e-9}, Point{0.3, 0.3}, Point{0.49, 0.51}})
    {
      Mesh m = uniform_mesh(d, 2);
      std::vector<oracle::Leaf> ref = oracle::leaves_of(m);
      for (int round = 0; round < 4; ++round)
      {
        const int id = m.locate(target);
        const CellKey c = m.cell(id);
        const int ids[] = {id};
        m = refine(m, ids);

        std::size_t k = 0;
        while (!(ref[k].level == c.level && ref[k].i == c.i && ref[k].j == c.j))
          ++k;
        ref = oracle::close_one_irregular(oracle::split(ref, k), d);
      }
      CHECK(m.size() == ref.size());
      CHECK(std::vector<CellKey>(m.cells().begin(), m.cells().end()) == oracle::keys(ref));
    }
  }

  TEST_CASE("random refinements stay tiled and one-irregular")
  {
    std::mt19937 rng(7);
    for (const Domain &d : {Domain::unit_square(), Domain::l_shape()})
      for (int trial = 0; trial < 6; ++trial)
      {
        const Mesh m = random_refinement(d, 2, 6, rng);
        CHECK(leaf_area(m) == doctest::Approx(d.area()).epsilon(1e-12));
        CHECK(oracle::one_irregular(oracle::leaves_of(m), d));
        CHECK(is_one_irregular(m));
        CHECK(oracle::keys(oracle::close_one_irregular(oracle::leaves_of(m), d)) ==
              std::vector<CellKey>(m.cells().begin(), m.cells().end()));
      }
  }

  TEST_CASE("refine is deterministic")
  {
    std::mt19937 a(3), b(3);
    CHECK(random_refinement(Domain::l_shape(), 2, 5, a) == random_refinement(Domain::l_shape(), 2, 5, b));
  }

  TEST_CASE("uniform_refine nests")
  {
    const Mesh u = uniform_mesh(Domain::bi_unit_square(), 2);
    CHECK(uniform_refine(u) == uniform_mesh(Domain::bi_unit_square(), 3));

    std::mt19937 rng(11);
    const Mesh m = random_refinement(Domain::l_shape(), 2, 4, rng);
    const Mesh f = uniform_refine(m);
    CHECK(f.size() == 4 * m.size());
    CHECK(f.refines(m));
    for (int id = 0; id < int(m.size()); ++id)
    {
      const Rect r = m.cell_rect(id);
      double area = 0.0;
      for (int cx = 0; cx < 2; ++cx)
        for (int cy = 0; cy < 2; ++cy)
        {
          const CellKey child = m.cell(id).child(cx, cy);
          REQUIRE(f.is_leaf(child));
          const Rect cr = f.cell_rect(f.find(child));
          CHECK(r.contains(cr));
          area += cr.area();
        }
      CHECK(area == doctest::Approx(r.area()).epsilon(1e-14));
    }
  }

  TEST_CASE("neighbors and location")
  {
    const Mesh m = uniform_mesh(Domain::unit_square(), 1);
    const int one[] = {0};
    const Mesh r = refine(m, one);
    const CellKey fine{2, 1, 0};
    REQUIRE(r.is_leaf(fine));
    CHECK(r.neighbor(fine, Side::East).kind == Mesh::Neighbor::Kind::Coarser);
    CHECK(r.neighbor(fine, Side::South).kind == Mesh::Neighbor::Kind::Boundary);
    CHECK(r.neighbor(CellKey{1, 1, 0}, Side::West).kind == Mesh::Neighbor::Kind::Finer);
    CHECK(r.neighbor(CellKey{1, 1, 0}, Side::North).kind == Mesh::Neighbor::Kind::Same);
    CHECK(r.cell(r.locate(Point{0.1, 0.1})) == CellKey{2, 0, 0});
    CHECK(r.locate(Point{2.0, 0.5}) == -1);
    CHECK(uniform_mesh(Domain::l_shape(), 2).locate(Point{0.5, -0.5}) == -1);
  }

  TEST_CASE("text serialization")
  {
    const std::string t = to_text(uniform_mesh(Domain::unit_square(), 1));
    CHECK(t == "1 0 0\n1 1 0\n1 0 1\n1 1 1\n");
  }
}
