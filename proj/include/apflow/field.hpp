#pragma once

#include <cmath>
#include <vector>

#include "apflow/grid.hpp"

namespace apflow {

/// Cell-centered piecewise-constant scalar unknown.
struct ScalarField {
    Grid grid;
    std::vector<double> v;

    ScalarField() = default;
    explicit ScalarField(const Grid& g, double fill = 0.0) : grid(g), v(g.cells(), fill) {}

    int size() const { return static_cast<int>(v.size()); }
    double& operator[](int k) { return v[k]; }
    double operator[](int k) const { return v[k]; }

    double min() const {
        double m = v[0];
        for (double x : v) m = std::min(m, x);
        return m;
    }
    double max() const {
        double m = v[0];
        for (double x : v) m = std::max(m, x);
        return m;
    }
    double mean() const {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    }

    ScalarField& operator+=(const ScalarField& o) {
        for (int k = 0; k < size(); ++k) v[k] += o.v[k];
        return *this;
    }
    ScalarField& operator-=(const ScalarField& o) {
        for (int k = 0; k < size(); ++k) v[k] -= o.v[k];
        return *this;
    }
    ScalarField& operator*=(double c) {
        for (double& x : v) x *= c;
        return *this;
    }
};

/// Cell-centered vector unknown; one scalar component per axis.
struct VectorField {
    Grid grid;
    std::vector<ScalarField> comp;

    VectorField() = default;
    explicit VectorField(const Grid& g, double fill = 0.0) : grid(g) {
        comp.reserve(g.dim);
        for (int a = 0; a < g.dim; ++a) comp.emplace_back(g, fill);
    }

    int dim() const { return static_cast<int>(comp.size()); }
    ScalarField& operator[](int a) { return comp[a]; }
    const ScalarField& operator[](int a) const { return comp[a]; }

    /// Euclidean norm of the vector at cell k.
    double norm_at(int k) const {
        double s = 0.0;
        for (const auto& c : comp) s += c[k] * c[k];
        return std::sqrt(s);
    }

    double max_norm() const {
        double m = 0.0;
        for (int k = 0; k < grid.cells(); ++k) m = std::max(m, norm_at(k));
        return m;
    }
};

}  // namespace apflow
