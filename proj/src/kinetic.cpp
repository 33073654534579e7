#include "riskwave/kinetic.hpp"

#include "riskwave/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace riskwave {

std::vector<Vec2> particle_impulses(const EParticle& particle) {
    std::vector<Vec2> out;
    out.reserve(particle.values.size());
    for (double u : particle.values) out.push_back(u * particle.velocity);
    return out;
}

const char* to_string(Deposition d) {
    return d == Deposition::nearest_cell ? "nearest-cell" : "bilinear";
}

namespace {

void check_grid(const GridSpec& g) {
    if (g.nx < 1 || g.ny < 1 || !(g.X > 0.0) || !(g.Y > 0.0) || !std::isfinite(g.X) || !std::isfinite(g.Y))
        throw Error(ErrorCode::bad_grid, "grid needs nx, ny >= 1 and a positive finite extent");
}

void check_particle(const EParticle& p, const GridSpec& g, std::size_t index, std::size_t variable) {
    const double x = p.position.x, y = p.position.y;
    if (!(x >= 0.0 && x <= g.X && y >= 0.0 && y <= g.Y))
        throw Error(ErrorCode::particle_out_of_domain,
                    "particle " + std::to_string(index) + " lies outside [0, X] x [0, Y]");
    if (variable >= p.values.size())
        throw Error(ErrorCode::invalid_argument, "particle " + std::to_string(index) + " has no variable u" +
                                                     std::to_string(variable + 1));
    if (!std::isfinite(p.velocity.x) || !std::isfinite(p.velocity.y))
        throw Error(ErrorCode::invalid_argument, "particle " + std::to_string(index) + " has a non-finite velocity");
    for (double u : p.values)
        if (!std::isfinite(u))
            throw Error(ErrorCode::invalid_argument,
                        "particle " + std::to_string(index) + " carries a non-finite value");
}

// Lower neighbour and weight of the upper one along one axis, cell centres
// at (i + 1/2) h.
std::pair<int, double> cic(double pos, double h) {
    const double s = pos / h - 0.5;
    const double i0 = std::floor(s);
    return {static_cast<int>(i0), s - i0};
}

int clamp_cell(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

} // namespace

DepositedFields deposit_fields(const std::vector<EParticle>& particles, const GridSpec& grid, std::size_t variable,
                               Deposition deposition) {
    check_grid(grid);
    for (std::size_t n = 0; n < particles.size(); ++n) check_particle(particles[n], grid, n, variable);

    DepositedFields f;
    const std::size_t cells = static_cast<std::size_t>(grid.nx) * grid.ny;
    f.density = {grid.nx, grid.ny, grid.dx(), grid.dy(), std::vector<double>(cells, 0.0)};
    f.impulse = {grid.nx, grid.ny, grid.dx(), grid.dy(), std::vector<Vec2>(cells, Vec2{})};

    auto add = [&](int i, int j, double w, const EParticle& p) {
        const double u = w * p.values[variable];
        f.density.at(i, j) += u;
        f.impulse.at(i, j) = f.impulse.at(i, j) + u * p.velocity;
    };

    for (const auto& p : particles) {
        if (deposition == Deposition::nearest_cell) {
            const int i = clamp_cell(static_cast<int>(std::floor(p.position.x / f.density.dx)), grid.nx);
            const int j = clamp_cell(static_cast<int>(std::floor(p.position.y / f.density.dy)), grid.ny);
            add(i, j, 1.0, p);
            continue;
        }
        const auto [ix, wx] = cic(p.position.x, f.density.dx);
        const auto [iy, wy] = cic(p.position.y, f.density.dy);
        const int i0 = clamp_cell(ix, grid.nx), i1 = clamp_cell(ix + 1, grid.nx);
        const int j0 = clamp_cell(iy, grid.ny), j1 = clamp_cell(iy + 1, grid.ny);
        add(i0, j0, (1 - wx) * (1 - wy), p);
        add(i1, j0, wx * (1 - wy), p);
        add(i0, j1, (1 - wx) * wy, p);
        add(i1, j1, wx * wy, p);
    }
    return f;
}

VelocityGrid field_velocity(const ScalarGrid& density, const VectorGrid& impulse, std::optional<double> floor) {
    if (density.nx != impulse.nx || density.ny != impulse.ny || density.dx != impulse.dx ||
        density.dy != impulse.dy || density.values.size() != impulse.values.size())
        throw Error(ErrorCode::incompatible_grids, "density and impulse grids differ in shape or spacing");

    double fl = 0.0;
    if (floor) {
        if (!(*floor > 0.0)) throw Error(ErrorCode::invalid_argument, "density floor must be positive");
        fl = *floor;
    } else {
        double mean = 0.0;
        for (double r : density.values) mean += std::abs(r);
        if (!density.values.empty()) mean /= static_cast<double>(density.values.size());
        fl = default_floor_fraction * mean;
        if (!(fl > 0.0)) fl = std::numeric_limits<double>::min();
    }

    VelocityGrid out{density.nx, density.ny, density.dx, density.dy,
                     std::vector<std::optional<Vec2>>(density.values.size())};
    for (std::size_t c = 0; c < density.values.size(); ++c) {
        const double r = density.values[c];
        if (r >= fl) out.values[c] = Vec2{impulse.values[c].x / r, impulse.values[c].y / r};
    }
    return out;
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, ',')) {
        const auto b = cur.find_first_not_of(" \t\r");
        const auto e = cur.find_last_not_of(" \t\r");
        cells.push_back(b == std::string::npos ? std::string{} : cur.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

double parse_number(const std::string& s, int line) {
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s[0] == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw Error(ErrorCode::invalid_argument, "particles line " + std::to_string(line) + ": bad number '" + s + "'");
    return v;
}

} // namespace

std::vector<EParticle> read_particles_csv(std::istream& in) {
    std::string line;
    int lineno = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        header = split_csv(line);
        break;
    }
    if (header.size() < 5 || header[0] != "x" || header[1] != "y" || header[2] != "vx" || header[3] != "vy")
        throw Error(ErrorCode::invalid_argument, "particles line " + std::to_string(lineno) +
                                                     ": header must be x,y,vx,vy,u1[,u2,...]");
    for (std::size_t c = 4; c < header.size(); ++c)
        if (header[c] != "u" + std::to_string(c - 3))
            throw Error(ErrorCode::invalid_argument, "particles line " + std::to_string(lineno) +
                                                         ": expected column 'u" + std::to_string(c - 3) + "', got '" +
                                                         header[c] + "'");

    std::vector<EParticle> out;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto cells = split_csv(line);
        if (cells.size() != header.size())
            throw Error(ErrorCode::invalid_argument, "particles line " + std::to_string(lineno) + ": expected " +
                                                         std::to_string(header.size()) + " columns, got " +
                                                         std::to_string(cells.size()));
        EParticle p;
        p.position = {parse_number(cells[0], lineno), parse_number(cells[1], lineno)};
        p.velocity = {parse_number(cells[2], lineno), parse_number(cells[3], lineno)};
        for (std::size_t c = 4; c < cells.size(); ++c) p.values.push_back(parse_number(cells[c], lineno));
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<EParticle> read_particles_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open particles file '" + path + "'");
    return read_particles_csv(in);
}

} // namespace riskwave
