#include "curvlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "curvlab/errors.hpp"

namespace curvlab {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SlopeInfinite: return "SlopeInfinite";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotLocallyIntegrable: return "NotLocallyIntegrable";
    case ErrorCode::CriterionShapeError: return "CriterionShapeError";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::UnboundedBelow: return "UnboundedBelow";
    case ErrorCode::OuterNoConvergence: return "OuterNoConvergence";
    case ErrorCode::RangeExceeded: return "RangeExceeded";
    case ErrorCode::ShapeViolation: return "ShapeViolation";
    case ErrorCode::LocalizationUnverifiable: return "LocalizationUnverifiable";
    case ErrorCode::InequalityViolated: return "InequalityViolated";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

namespace {
std::string slope_message(double p) {
  std::ostringstream os;
  os.precision(17);
  os << "momentum " << p << " has |p| >= 1: slope is infinite";
  return os.str();
}

std::string located(const std::string& message, int line, int column) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ", ";
  os << "column " << column << ": " << message;
  return os.str();
}
}  // namespace

SlopeInfinite::SlopeInfinite(double p) : Error(ErrorCode::SlopeInfinite, slope_message(p)), p_(p) {}

ParseError::ParseError(const std::string& message, int line, int column, ErrorCode code)
    : Error(code, located(message, line, column)), line_(line), column_(column) {}

double psi(double slope) noexcept {
  // hypot avoids overflow of 1 + s^2 for |s| beyond 1e154.
  return slope / std::hypot(1.0, slope);
}

double psi_inv(double p) {
  if (!(std::abs(p) < 1.0)) throw SlopeInfinite(p);
  return p / std::sqrt((1.0 - p) * (1.0 + p));
}

Grid::Grid(double a, double b, std::size_t n) : a_(a), b_(b), n_(n) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    throw Error(ErrorCode::InvalidArgument, "grid requires finite a < b");
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "grid requires at least 2 cells");
}

double Grid::x(std::size_t i) const noexcept {
  if (i == n_) return b_;
  return a_ + static_cast<double>(i) * h();
}

std::size_t Grid::cell_of(double x) const noexcept {
  const double t = std::floor((x - a_) / h());
  if (!(t > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(t), n_ - 1);
}

GridFunction::GridFunction(Grid grid, std::vector<double> ac_values, std::vector<Jump> jumps)
    : grid_(grid), ac_(std::move(ac_values)), jumps_(std::move(jumps)) {
  if (ac_.size() != grid_.nodes())
    throw Error(ErrorCode::InvalidArgument, "grid function needs one value per node");
  for (double v : ac_)
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidArgument, "grid function values must be finite");
  std::size_t prev_end = 0;
  for (std::size_t k = 0; k < jumps_.size(); ++k) {
    const Jump& j = jumps_[k];
    const bool shape_ok = (j.cells == 1 || j.cells == 2) && j.first_cell + j.cells <= grid_.cells() &&
                          j.node >= j.first_cell && j.node <= j.first_cell + j.cells;
    if (!shape_ok || j.node == 0 || j.node >= grid_.cells())
      throw Error(ErrorCode::InvalidArgument, "jump atoms must sit on interior nodes of their cells");
    if (k > 0 && (j.first_cell < prev_end || j.node <= jumps_[k - 1].node))
      throw Error(ErrorCode::InvalidArgument, "jump atoms must be strictly increasing and disjoint");
    if (!std::isfinite(j.height) || !std::isfinite(j.node_offset))
      throw Error(ErrorCode::InvalidArgument, "jump heights must be finite");
    prev_end = j.first_cell + j.cells;
  }
}

GridFunction GridFunction::from_nodal(Grid grid, std::vector<double> nodal) {
  return GridFunction(grid, std::move(nodal));
}

GridFunction GridFunction::constant(Grid grid, double value) {
  return GridFunction(grid, std::vector<double>(grid.nodes(), value));
}

double GridFunction::atom_contribution(std::size_t i) const {
  double total = 0.0;
  for (const Jump& j : jumps_) {
    if (i <= j.first_cell) continue;
    total += (i >= j.first_cell + j.cells) ? j.height : j.node_offset;
  }
  return total;
}

std::vector<double> GridFunction::nodal() const {
  std::vector<double> u(ac_);
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += atom_contribution(i);
  return u;
}

std::vector<double> GridFunction::momentum() const {
  const auto u = nodal();
  const double h = grid_.h();
  std::vector<double> p(grid_.cells());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = psi((u[i + 1] - u[i]) / h);
  return p;
}

double GridFunction::total_variation() const {
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < ac_.size(); ++i) tv += std::abs(ac_[i + 1] - ac_[i]);
  for (const Jump& j : jumps_) tv += std::abs(j.height);
  return tv;
}

double GridFunction::left_trace(const Jump& j) const {
  return ac_[j.first_cell] + atom_contribution(j.first_cell);
}

double GridFunction::right_trace(const Jump& j) const {
  const std::size_t end = j.first_cell + j.cells;
  return ac_[end] + atom_contribution(end);
}

GridFunction GridFunction::atomize(std::size_t first_cell, std::size_t cells, std::size_t node) const {
  const auto u = nodal();
  if (first_cell + cells > grid_.cells())
    throw Error(ErrorCode::InvalidArgument, "atom cells outside the grid");
  Jump jump;
  jump.node = node;
  jump.first_cell = first_cell;
  jump.cells = cells;
  jump.height = u[first_cell + cells] - u[first_cell];
  jump.node_offset = cells == 2 ? u[first_cell + 1] - u[first_cell] : 0.0;

  std::vector<Jump> jumps(jumps_);
  jumps.push_back(jump);
  std::sort(jumps.begin(), jumps.end(), [](const Jump& l, const Jump& r) { return l.node < r.node; });
  GridFunction out(grid_, u, jumps);
  for (std::size_t i = 0; i < u.size(); ++i) out.ac_[i] = u[i] - out.atom_contribution(i);
  return out;
}

MomentumField momentum_field(const GridFunction& u) { return MomentumField{u.grid(), u.momentum()}; }

GridFunction refine(const GridFunction& u, std::size_t factor) {
  if (factor == 0) throw Error(ErrorCode::InvalidArgument, "refinement factor must be positive");
  const Grid& g = u.grid();
  Grid fine(g.a(), g.b(), g.cells() * factor);
  const auto ac = u.ac_values();
  std::vector<double> values(fine.nodes());
  for (std::size_t i = 0; i < g.cells(); ++i) {
    for (std::size_t k = 0; k < factor; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(factor);
      values[i * factor + k] = (1.0 - t) * ac[i] + t * ac[i + 1];
    }
  }
  values.back() = ac.back();
  std::vector<Jump> jumps;
  for (const Jump& j : u.jumps()) {
    Jump r;
    r.node = j.node * factor;
    r.first_cell = r.node - 1;
    r.cells = 1;
    r.height = j.height;
    jumps.push_back(r);
  }
  return GridFunction(fine, std::move(values), std::move(jumps));
}

}  // namespace curvlab
