// SPDX-License-Identifier: Apache-2.0

#ifndef WCMO_MESH_HPP
#define WCMO_MESH_HPP

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace wcmo
{

struct Point
{
  double x = 0.0;
  double y = 0.0;
};

// Closed axis-aligned rectangle.
struct Rect
{
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  bool empty() const { return !(x1 > x0 && y1 > y0); }
  bool contains(Point p, double tol = 0.0) const
  {
    return p.x >= x0 - tol && p.x <= x1 + tol && p.y >= y0 - tol && p.y <= y1 + tol;
  }
  bool contains(const Rect &r, double tol = 0.0) const
  {
    return r.x0 >= x0 - tol && r.x1 <= x1 + tol && r.y0 >= y0 - tol && r.y1 <= y1 + tol;
  }
  Rect intersect(const Rect &r) const;

  friend bool operator==(const Rect &, const Rect &) = default;
};

// Deepest refinement level supported by the integer node lattice.
inline constexpr int kMaxLevel = 28;

// A quadtree cell: level and integer position on the 2^level x 2^level grid
// over the domain's bounding box. Ordered by level, then row-major (j, i).
struct CellKey
{
  int level = 0;
  std::int64_t i = 0;
  std::int64_t j = 0;

  CellKey parent() const { return {level - 1, i >> 1, j >> 1}; }
  CellKey child(int cx, int cy) const { return {level + 1, 2 * i + cx, 2 * j + cy}; }
  std::uint64_t pack() const
  {
    return (std::uint64_t(level) << 58) | (std::uint64_t(j) << 29) | std::uint64_t(i);
  }

  friend bool operator==(const CellKey &, const CellKey &) = default;
  friend std::strong_ordering operator<=>(const CellKey &a, const CellKey &b)
  {
    if (auto c = a.level <=> b.level; c != 0)
      return c;
    if (auto c = a.j <=> b.j; c != 0)
      return c;
    return a.i <=> b.i;
  }
};

// Outward side of a cell edge; also used as a bit mask for boundary sides.
enum class Side : unsigned
{
  West = 1u,
  East = 2u,
  South = 4u,
  North = 8u
};
inline constexpr Side kSides[4] = {Side::West, Side::East, Side::South, Side::North};

class Domain
{
public:
  enum class Kind
  {
    Square,
    LShape
  };

  // Axis-aligned box [x0,x1] x [y0,y1]; throws std::invalid_argument unless
  // the bounds are finite and lo < hi per axis.
  static Domain square(double x0, double x1, double y0, double y1);
  static Domain unit_square() { return square(0.0, 1.0, 0.0, 1.0); }
  static Domain bi_unit_square() { return square(-1.0, 1.0, -1.0, 1.0); }
  // (-1,1)^2 minus [0,1) x (-1,0].
  static Domain l_shape();

  Kind kind() const { return kind_; }
  const Rect &bounds() const { return bounds_; }
  double area() const;
  // Coarsest level at which cells lie entirely inside the domain.
  int min_level() const { return kind_ == Kind::LShape ? 1 : 0; }
  bool contains_cell(const CellKey &c) const;
  bool contains(Point p) const;
  Rect cell_rect(const CellKey &c) const;

  friend bool operator==(const Domain &, const Domain &) = default;

private:
  Domain(Kind k, Rect b) : kind_(k), bounds_(b) {}
  Kind kind_;
  Rect bounds_;
};

// Quadtree mesh: the leaves tile the domain and adjacent leaves differ by at
// most one level. Immutable after construction.
class Mesh
{
public:
  struct Neighbor
  {
    enum class Kind
    {
      Boundary,
      Same,
      Finer,
      Coarser
    };
    Kind kind = Kind::Boundary;
    // The same-level cell across the edge, or the covering coarser leaf.
    CellKey key;
  };

  // Leaves are sorted; throws std::invalid_argument if they do not tile the
  // domain.
  Mesh(Domain domain, std::vector<CellKey> leaves);

  const Domain &domain() const { return domain_; }
  std::span<const CellKey> cells() const { return leaves_; }
  std::size_t size() const { return leaves_.size(); }
  const CellKey &cell(int id) const { return leaves_[static_cast<std::size_t>(id)]; }
  Rect cell_rect(int id) const { return domain_.cell_rect(cell(id)); }

  // Leaf id of the key, or -1.
  int find(const CellKey &c) const;
  bool is_leaf(const CellKey &c) const { return find(c) >= 0; }
  // Leaf or ancestor of a leaf.
  bool in_tree(const CellKey &c) const;

  Neighbor neighbor(const CellKey &c, Side s) const;
  Neighbor neighbor(int id, Side s) const { return neighbor(cell(id), s); }

  int max_level() const;
  double h_min() const;

  // True if every leaf of this mesh is a leaf or descendant of a leaf of
  // `coarse` over the same domain.
  bool refines(const Mesh &coarse) const;

  // Leaf containing the point; -1 if outside the domain.
  int locate(Point p) const;
  // Leaf containing the exact lattice point x = x0 + W*X/denom, y = y0 + H*Y/denom,
  // with denom = q * 2^kMaxLevel for some integer q.
  int locate(std::int64_t X, std::int64_t Y, std::int64_t denom) const;

  friend bool operator==(const Mesh &a, const Mesh &b)
  {
    return a.domain_ == b.domain_ && a.leaves_ == b.leaves_;
  }

private:
  Domain domain_;
  std::vector<CellKey> leaves_;
  std::unordered_map<std::uint64_t, int> leaf_index_;
  std::unordered_set<std::uint64_t> internal_;
};

Mesh uniform_mesh(const Domain &domain, int level);
// Splits the marked leaves and closes the result under 1-irregularity.
// Throws std::invalid_argument for an unknown cell id.
Mesh refine(const Mesh &mesh, std::span<const int> marked);
Mesh uniform_refine(const Mesh &mesh);

bool is_one_irregular(const Mesh &mesh);

// "level i j" per line.
std::string to_text(const Mesh &mesh);

} // namespace wcmo

#endif // WCMO_MESH_HPP
