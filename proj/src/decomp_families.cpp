#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "labelrec/decomp.hpp"

// Per-family decomposition constructors. The banded lattice families share
// one skeleton: split the rows into bands (height 3, remainder absorbed
// into a final band of 4 or 2), probe out the edges crossing band
// boundaries except at a 3-column connector on the alternating end, cover
// each band with overlapping 3-column blocks traversed boustrophedon, and
// bridge each boundary with a 3x3 straddle block over the connector.

namespace labelrec {

namespace {

std::vector<int> sorted_vec(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Band layout along one axis: heights 3,...,3 with remainder r=1 making the
// final band 4 and r=2 making it 2.
struct Band {
  int first;  // first row
  int height;
  int last() const { return first + height - 1; }
};

std::vector<Band> band_layout(int extent) {
  std::vector<Band> bands;
  int r = extent % 3, full = extent / 3;
  int count3 = r == 1 ? full - 1 : full;
  int row = 0;
  for (int i = 0; i < count3; ++i) {
    bands.push_back({row, 3});
    row += 3;
  }
  if (r == 1) {
    bands.push_back({row, 4});
    row += 4;
  } else if (r == 2) {
    bands.push_back({row, 2});
    row += 2;
  }
  return bands;
}

// Column starts for 3-wide overlapping blocks: even offsets plus the forced
// final start side-3.
std::vector<int> block_starts(int side) {
  std::vector<int> starts;
  for (int j = 0; j + 3 <= side; j += 2) starts.push_back(j);
  starts.push_back(side - 3);
  return sorted_vec(std::move(starts));
}

enum class LatticeKind { kSquare, kTriangular, kHexagonal };

Graph build_lattice(LatticeKind kind, int side) {
  switch (kind) {
    case LatticeKind::kSquare:
      return build_grid(side, side);
    case LatticeKind::kTriangular:
      return build_triangular(side);
    case LatticeKind::kHexagonal:
      return build_hexagonal(side);
  }
  throw std::logic_error("unreachable");
}

FamilyDecomposition banded_snake(LatticeKind kind, int side) {
  if (side < 4) throw std::invalid_argument("banded decomposition: side >= 4 required");
  Graph g = build_lattice(kind, side);
  auto bands = band_layout(side);
  const int nbands = static_cast<int>(bands.size());

  // Boundary i sits between bands i and i+1; its connector is on the right
  // for even i, matching the direction band i is traversed.
  auto conn_low = [&](int i) { return i % 2 == 0 ? side - 3 : 0; };
  auto in_conn = [&](int i, int c) { return c >= conn_low(i) && c < conn_low(i) + 3; };

  // E': drop cross-boundary edges away from the connector columns.
  std::vector<int> probed;
  std::vector<int> boundary_of_row(side, -1);  // boundary index if row is a band end
  for (int i = 0; i + 1 < nbands; ++i) boundary_of_row[bands[i].last()] = i;
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    int ru = u / side, cu = u % side, rv = v / side, cv = v % side;
    bool keep = true;
    if (rv == ru + 1) {
      int b = boundary_of_row[ru];
      if (b >= 0) {
        if (cu == cv) {
          keep = in_conn(b, cu);  // vertical
        } else {
          keep = in_conn(b, cu) && in_conn(b, cv);  // triangular diagonal
        }
      }
    }
    if (keep) probed.push_back(e);
  }
  ProbedGraph gp = make_probed(std::move(g), std::move(probed));

  FamilyDecomposition fam;
  TreeDecomposition& td = fam.td;
  auto starts = block_starts(side);
  auto add_component = [&](std::vector<int> verts, ComponentKind kind_tag) {
    td.components.push_back(sorted_vec(std::move(verts)));
    fam.kinds.push_back(kind_tag);
  };
  auto block_vertices = [&](int row0, int height, int col0, int ncols) {
    std::vector<int> verts;
    verts.reserve(height * ncols);
    for (int r = row0; r < row0 + height; ++r)
      for (int c = col0; c < col0 + ncols; ++c) verts.push_back(r * side + c);
    return verts;
  };

  for (int b = 0; b < nbands; ++b) {
    std::vector<int> order = starts;
    if (b % 2 == 1) std::reverse(order.begin(), order.end());
    bool interior_band = bands[b].height == 3 &&
                         (kind == LatticeKind::kSquare ||
                          (b > 0 && b + 1 < nbands));
    for (size_t j = 0; j < order.size(); ++j) {
      bool end_block = j == 0 || j + 1 == order.size();
      ComponentKind tag = ComponentKind::kOther;
      if (bands[b].height == 3)
        tag = end_block || !interior_band ? ComponentKind::kBoundary
                                          : ComponentKind::kInterior;
      add_component(block_vertices(bands[b].first, bands[b].height, order[j], 3), tag);
    }
    if (b + 1 < nbands) {
      int rb = bands[b].last();
      add_component(block_vertices(rb - 1, 3, conn_low(b), 3), ComponentKind::kOther);
    }
  }
  for (int i = 0; i + 1 < td.count(); ++i) td.tree_edges.push_back({i, i + 1});
  for (const auto& w : td.components)
    td.extended.push_back(extend_neighborhood(w, gp));
  td.probed = gp.probed;
  fam.graph = std::move(gp);
  return fam;
}

}  // namespace

FamilyDecomposition decomp_path(int n) {
  if (n < 2) throw std::invalid_argument("decomp_path: n >= 2 required");
  FamilyDecomposition fam;
  fam.graph = probe_all(build_path(n));
  for (int i = 0; i + 1 < n; ++i) {
    fam.td.components.push_back({i, i + 1});
    fam.td.extended.push_back({i, i + 1});
    fam.kinds.push_back(ComponentKind::kOther);
  }
  for (int i = 0; i + 2 < n; ++i) fam.td.tree_edges.push_back({i, i + 1});
  fam.td.probed = fam.graph.probed;
  return fam;
}

FamilyDecomposition decomp_constant_height_grid(int c, int width) {
  if (c < 2 || c > 6)
    throw std::invalid_argument("decomp_constant_height_grid: 2 <= c <= 6 required");
  if (width < 2)
    throw std::invalid_argument("decomp_constant_height_grid: width >= 2 required");
  FamilyDecomposition fam;
  fam.graph = probe_all(build_grid(c, width));
  for (int i = 0; i + 1 < width; ++i) {
    std::vector<int> verts;
    for (int r = 0; r < c; ++r) {
      verts.push_back(r * width + i);
      verts.push_back(r * width + i + 1);
    }
    fam.td.components.push_back(sorted_vec(std::move(verts)));
    fam.kinds.push_back(i == 0 || i + 2 == width ? ComponentKind::kBoundary
                                                 : ComponentKind::kInterior);
  }
  for (int i = 0; i + 2 < width; ++i) fam.td.tree_edges.push_back({i, i + 1});
  for (const auto& w : fam.td.components)
    fam.td.extended.push_back(extend_neighborhood(w, fam.graph));
  fam.td.probed = fam.graph.probed;
  return fam;
}

FamilyDecomposition decomp_square_grid_zigzag(int side) {
  return banded_snake(LatticeKind::kSquare, side);
}

FamilyDecomposition decomp_triangular(int side) {
  return banded_snake(LatticeKind::kTriangular, side);
}

FamilyDecomposition decomp_hexagonal(int side) {
  return banded_snake(LatticeKind::kHexagonal, side);
}

namespace {

// Shared by the ring-lattice and Newman-Watts constructors: radius-k balls
// with centers spaced k+1, final ball absorbing the remainder, probing only
// span <= k edges that do not wrap across the seam.
FamilyDecomposition ring_ball_cover(const Graph& g, int n, int k) {
  std::vector<int> probed;
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    if (v - u <= k) probed.push_back(e);
  }
  FamilyDecomposition fam;
  fam.graph = make_probed(g, std::move(probed));

  int m = (n - (2 * k + 1)) / (k + 1) + 1;
  for (int i = 0; i < m; ++i) {
    int lo = i * (k + 1);
    int hi = i + 1 == m ? n - 1 : lo + 2 * k;
    std::vector<int> verts(hi - lo + 1);
    std::iota(verts.begin(), verts.end(), lo);
    fam.td.components.push_back(std::move(verts));
    fam.kinds.push_back(i == 0 || i + 1 == m ? ComponentKind::kBoundary
                                             : ComponentKind::kInterior);
  }
  for (int i = 0; i + 1 < m; ++i) fam.td.tree_edges.push_back({i, i + 1});
  for (const auto& w : fam.td.components)
    fam.td.extended.push_back(extend_neighborhood(w, fam.graph));
  fam.td.probed = fam.graph.probed;
  return fam;
}

}  // namespace

FamilyDecomposition decomp_ring_lattice(int n, int k) {
  return ring_ball_cover(build_ring_lattice(n, k), n, k);
}

FamilyDecomposition decomp_newman_watts(const Graph& g, int n, int k) {
  if (g.n != n) throw std::invalid_argument("decomp_newman_watts: n mismatch");
  // sanity: g must contain the full ring lattice
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= k; ++j)
      if (g.edge_index(i, (i + j) % n) < 0)
        throw std::invalid_argument("decomp_newman_watts: missing ring edge");
  return ring_ball_cover(g, n, k);
}

FamilyDecomposition decomp_hypertube(int c, int length) {
  if (c < 2 || c > 3)
    throw std::invalid_argument("decomp_hypertube: 2 <= c <= 3 required");
  if (length < 2) throw std::invalid_argument("decomp_hypertube: length >= 2 required");
  FamilyDecomposition fam;
  fam.graph = probe_all(build_hypergrid({c, c, length}));
  for (int t = 0; t + 1 < length; ++t) {
    std::vector<int> verts;
    for (int a = 0; a < c; ++a)
      for (int b = 0; b < c; ++b) {
        verts.push_back((a * c + b) * length + t);
        verts.push_back((a * c + b) * length + t + 1);
      }
    fam.td.components.push_back(sorted_vec(std::move(verts)));
    fam.td.extended.push_back(fam.td.components.back());  // identity extension
    fam.kinds.push_back(t == 0 || t + 2 == length ? ComponentKind::kBoundary
                                                  : ComponentKind::kInterior);
  }
  for (int i = 0; i + 2 < length; ++i) fam.td.tree_edges.push_back({i, i + 1});
  fam.td.probed = fam.graph.probed;
  return fam;
}

// Three-dimensional snake: the (d0, d1) plane is split into 3x3 cells
// (remainders as in band_layout), each cell spanning the full d2 axis forms
// a tube covered by overlapping 3-thick blocks; tubes are chained
// boustrophedon with 3x3 connector patches and straddle blocks across every
// cell boundary crossed by the chain.
FamilyDecomposition decomp_hypergrid(const std::vector<int>& dims) {
  if (dims.size() != 3)
    throw std::invalid_argument("decomp_hypergrid: exactly three extents required");
  const int X = dims[0], Y = dims[1], L = dims[2];
  if (X < 2 || Y < 2 || L < 3)
    throw std::invalid_argument("decomp_hypergrid: extents too small");
  Graph g = build_hypergrid(dims);
  auto xb = band_layout(X), yb = band_layout(Y);
  const int nx = static_cast<int>(xb.size()), ny = static_cast<int>(yb.size());
  auto id = [&](int x, int y, int z) { return (x * Y + y) * L + z; };

  // Cell chain order: x-bands ascending, y-bands boustrophedon.
  std::vector<std::pair<int, int>> cells;
  for (int bx = 0; bx < nx; ++bx) {
    for (int by = 0; by < ny; ++by) {
      int yy = bx % 2 == 0 ? by : ny - 1 - by;
      cells.push_back({bx, yy});
    }
  }
  const int ncells = static_cast<int>(cells.size());
  // Along-tube traversal alternates per cell position in the chain.
  auto zstarts = block_starts(L);
  auto tube_dir_up = [&](int ci) { return ci % 2 == 0; };
  // Connector z-range between chain neighbors ci and ci+1: the end of tube
  // ci's traversal.
  auto conn_z_low = [&](int ci) { return tube_dir_up(ci) ? L - 3 : 0; };

  // Probe: keep in-cell edges; cross-cell edges only inside the connector
  // window of the boundary the chain crosses.
  std::vector<int> xband_of(X), yband_of(Y);
  for (int i = 0; i < nx; ++i)
    for (int r = xb[i].first; r <= xb[i].last(); ++r) xband_of[r] = i;
  for (int i = 0; i < ny; ++i)
    for (int r = yb[i].first; r <= yb[i].last(); ++r) yband_of[r] = i;
  std::vector<int> cell_pos(nx * ny);
  for (int ci = 0; ci < ncells; ++ci)
    cell_pos[cells[ci].first * ny + cells[ci].second] = ci;

  std::vector<int> probed;
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [u, v] = g.edges[e];
    int xu = u / (Y * L), yu = (u / L) % Y, zu = u % L;
    int xv = v / (Y * L), yv = (v / L) % Y, zv = v % L;
    int cu = cell_pos[xband_of[xu] * ny + yband_of[yu]];
    int cv = cell_pos[xband_of[xv] * ny + yband_of[yv]];
    bool keep;
    if (cu == cv) {
      keep = true;  // in-cell, including all z edges
    } else {
      int lo = std::min(cu, cv), hi = std::max(cu, cv);
      if (hi != lo + 1) {
        keep = false;  // cells not consecutive in the chain
      } else {
        int zlow = conn_z_low(lo);
        keep = zu == zv && zu >= zlow && zu < zlow + 3;
      }
    }
    if (keep) probed.push_back(e);
  }
  ProbedGraph gp = make_probed(std::move(g), std::move(probed));

  FamilyDecomposition fam;
  TreeDecomposition& td = fam.td;
  auto add_block = [&](const Band& bxx, const Band& byy, int z0, int zlen,
                       ComponentKind tag) {
    std::vector<int> verts;
    for (int x = bxx.first; x <= bxx.last(); ++x)
      for (int y = byy.first; y <= byy.last(); ++y)
        for (int z = z0; z < z0 + zlen; ++z) verts.push_back(id(x, y, z));
    td.components.push_back(sorted_vec(std::move(verts)));
    fam.kinds.push_back(tag);
  };

  for (int ci = 0; ci < ncells; ++ci) {
    auto [bx, by] = cells[ci];
    std::vector<int> order = zstarts;
    if (!tube_dir_up(ci)) std::reverse(order.begin(), order.end());
    bool mid_cell = xb[bx].height == 3 && yb[by].height == 3 && bx > 0 &&
                    bx + 1 < nx && by > 0 && by + 1 < ny;
    for (size_t j = 0; j < order.size(); ++j) {
      bool end_block = j == 0 || j + 1 == order.size();
      ComponentKind tag = ComponentKind::kBoundary;
      if (mid_cell && !end_block && order[j] >= 1 && order[j] + 3 <= L - 1)
        tag = ComponentKind::kInterior;
      add_block(xb[bx], yb[by], order[j], 3, tag);
    }
    if (ci + 1 < ncells) {
      // straddle across the boundary between cells ci and ci+1
      auto [bx2, by2] = cells[ci + 1];
      int zlow = conn_z_low(ci);
      if (bx2 == bx) {
        // last row of the lower of the two adjacent y-bands
        int ybound = std::max(yb[by].first, yb[by2].first) - 1;
        Band ystrad{ybound - 1, 3};
        add_block(xb[bx], ystrad, zlow, 3, ComponentKind::kOther);
      } else {
        int xbound = std::max(xb[bx].first, xb[bx2].first) - 1;
        Band xstrad{xbound - 1, 3};
        add_block(xstrad, yb[by], zlow, 3, ComponentKind::kOther);
      }
    }
  }
  for (int i = 0; i + 1 < td.count(); ++i) td.tree_edges.push_back({i, i + 1});
  for (const auto& w : td.components)
    td.extended.push_back(extend_neighborhood(w, gp));
  td.probed = gp.probed;
  fam.graph = std::move(gp);
  return fam;
}

}  // namespace labelrec
