#include "apflow/grid.hpp"

#include <cmath>
#include <string>

namespace apflow {

Grid make_grid(int dim, std::span<const int> n_cells, std::span<const double> origin,
               std::span<const double> length) {
    if (dim != 1 && dim != 2)
        throw WrongDimension("make_grid: dim must be 1 or 2, got " + std::to_string(dim));
    if (static_cast<int>(n_cells.size()) < dim || static_cast<int>(origin.size()) < dim ||
        static_cast<int>(length.size()) < dim)
        throw BadValue("make_grid: need one entry per axis");

    Grid g;
    g.dim = dim;
    for (int a = 0; a < dim; ++a) {
        if (n_cells[a] < 4)
            throw TooFewCells("make_grid: need at least 4 cells per axis, got " +
                              std::to_string(n_cells[a]));
        if (!(length[a] > 0.0)) throw BadValue("make_grid: axis length must be positive");
        g.n[a] = n_cells[a];
        g.origin[a] = origin[a];
        g.length[a] = length[a];
    }
    g.h = g.length[0] / g.n[0];
    if (dim == 2) {
        const double h1 = g.length[1] / g.n[1];
        if (std::abs(h1 - g.h) > 1e-12 * std::abs(g.h))
            throw NonSquareCells("make_grid: cell width differs across axes (" +
                                 std::to_string(g.h) + " vs " + std::to_string(h1) + ")");
    }
    return g;
}

}  // namespace apflow
