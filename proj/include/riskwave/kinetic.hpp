#pragma once

#include "riskwave/model.hpp"

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace riskwave {

/// One agent: a point in risk space carrying l extensive quantities.
struct EParticle {
    Vec2 position;
    Vec2 velocity;
    std::vector<double> values;
};

/// impulse_j = u_j * v
std::vector<Vec2> particle_impulses(const EParticle& particle);

struct GridSpec {
    int nx = 0;
    int ny = 0;
    double X = 0.0;
    double Y = 0.0;

    double dx() const { return X / nx; }
    double dy() const { return Y / ny; }
};

template <class T>
struct FieldGrid {
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    std::vector<T> values; // row-major in x: values[j * nx + i]

    T& at(int i, int j) { return values[static_cast<std::size_t>(j) * nx + i]; }
    const T& at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
    Vec2 center(int i, int j) const { return {(i + 0.5) * dx, (j + 0.5) * dy}; }
};

using ScalarGrid = FieldGrid<double>;
using VectorGrid = FieldGrid<Vec2>;
/// std::nullopt marks an empty cell: the density there is below the floor.
using VelocityGrid = FieldGrid<std::optional<Vec2>>;

enum class Deposition { nearest_cell, bilinear };

const char* to_string(Deposition d);

struct DepositedFields {
    ScalarGrid density;
    VectorGrid impulse;
};

/// Bilinear deposition spreads each particle over the four nearest cell
/// centres; weight falling outside the grid near a wall is folded back onto
/// the edge cell, so every particle deposits exactly u_j.
DepositedFields deposit_fields(const std::vector<EParticle>& particles, const GridSpec& grid, std::size_t variable,
                               Deposition deposition = Deposition::nearest_cell);

constexpr double default_floor_fraction = 1e-12;

/// Floor defaults to 1e-12 of the mean absolute cell density.
VelocityGrid field_velocity(const ScalarGrid& density, const VectorGrid& impulse,
                            std::optional<double> floor = std::nullopt);

/// Columns x, y, vx, vy, u1[, u2, ...]; header row required.
std::vector<EParticle> read_particles_csv(std::istream& in);
std::vector<EParticle> read_particles_csv(const std::string& path);

} // namespace riskwave
