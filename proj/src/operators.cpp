#include "apflow/operators.hpp"

#include <string>

namespace apflow {

double face_jump(const ScalarField& f, const FaceRef& face) {
    const int out = f.grid.neighbor(face.cell, face.axis, face.sign);
    return f[out] - f[face.cell];
}

double face_avg(const ScalarField& f, const FaceRef& face) {
    const int out = f.grid.neighbor(face.cell, face.axis, face.sign);
    return 0.5 * (f[out] + f[face.cell]);
}

ScalarField div_h(const VectorField& v) {
    const Grid& g = v.grid;
    ScalarField out(g);
    const double inv2h = 1.0 / (2.0 * g.h);
    for (int k = 0; k < g.cells(); ++k) {
        double s = 0.0;
        for (int a = 0; a < g.dim; ++a)
            s += (v[a][g.neighbor(k, a, +1)] - v[a][g.neighbor(k, a, -1)]) * inv2h;
        out[k] = s;
    }
    return out;
}

VectorField grad_h(const ScalarField& f) {
    const Grid& g = f.grid;
    VectorField out(g);
    const double inv2h = 1.0 / (2.0 * g.h);
    for (int a = 0; a < g.dim; ++a)
        for (int k = 0; k < g.cells(); ++k)
            out[a][k] = (f[g.neighbor(k, a, +1)] - f[g.neighbor(k, a, -1)]) * inv2h;
    return out;
}

ScalarField lap_compact(const ScalarField& f) {
    const Grid& g = f.grid;
    ScalarField out(g);
    const double invh2 = 1.0 / (g.h * g.h);
    for (int k = 0; k < g.cells(); ++k) {
        double s = 0.0;
        for (int a = 0; a < g.dim; ++a)
            s += (f[g.neighbor(k, a, +1)] - 2.0 * f[k] + f[g.neighbor(k, a, -1)]) * invh2;
        out[k] = s;
    }
    return out;
}

ScalarField lap_wide(const ScalarField& f) {
    // Defined as the exact composition, so lap_wide == div_h(grad_h(f))
    // holds bitwise.
    return div_h(grad_h(f));
}

namespace {

ScalarField apply_op(OpTag tag, const ScalarField& f) {
    const Grid& g = f.grid;
    switch (tag) {
        case OpTag::DiffAxis0:
        case OpTag::DiffAxis1: {
            const int axis = (tag == OpTag::DiffAxis0) ? 0 : 1;
            if (axis >= g.dim) throw WrongDimension("dense_matrix: axis 1 requires a 2D grid");
            ScalarField out(g);
            const double inv2h = 1.0 / (2.0 * g.h);
            for (int k = 0; k < g.cells(); ++k)
                out[k] = (f[g.neighbor(k, axis, +1)] - f[g.neighbor(k, axis, -1)]) * inv2h;
            return out;
        }
        case OpTag::LapCompact:
            return lap_compact(f);
        case OpTag::LapWide:
            return lap_wide(f);
    }
    throw InternalError("dense_matrix: unknown op tag");
}

}  // namespace

DenseMatrix dense_matrix(OpTag tag, const Grid& g) {
    const int nc = g.cells();
    if (nc > 4096)
        throw TooLarge("dense_matrix: grid has " + std::to_string(nc) + " cells (cap 4096)");
    DenseMatrix m(nc);
    ScalarField e(g);
    for (int j = 0; j < nc; ++j) {
        e.v.assign(nc, 0.0);
        e[j] = 1.0;
        const ScalarField col = apply_op(tag, e);
        for (int i = 0; i < nc; ++i) m.at(i, j) = col[i];
    }
    return m;
}

}  // namespace apflow
