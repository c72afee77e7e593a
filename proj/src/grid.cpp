#include "wavelab/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "wavelab/error.hpp"

namespace wavelab {
namespace {

using cplx = std::complex<double>;

class FftPlan {
 public:
  explicit FftPlan(const GridSpec& g) {
    const int rank = g.array_dim();
    std::vector<int> dims(static_cast<std::size_t>(rank), g.n);
    const auto total = static_cast<std::size_t>(g.size());
    auto* in = fftw_alloc_complex(total);
    auto* out = fftw_alloc_complex(total);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    fwd_ = fftw_plan_dft(rank, dims.data(), in, out, FFTW_FORWARD, flags);
    bwd_ = fftw_plan_dft(rank, dims.data(), in, out, FFTW_BACKWARD, flags);
    fftw_free(in);
    fftw_free(out);
    if (fwd_ == nullptr || bwd_ == nullptr) throw Error("FFTW planning failed");
  }
  ~FftPlan() {
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
  }
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  void forward(const cplx* in, cplx* out) const { run(fwd_, in, out); }
  void backward(const cplx* in, cplx* out) const { run(bwd_, in, out); }

 private:
  static void run(fftw_plan p, const cplx* in, cplx* out) {
    // fftw_execute_dft does not modify the input of an out-of-place plan.
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
  }
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

// FFTW's planner is not re-entrant; plan creation is serialized here while
// execution through the new-array interface is safe from any thread.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::shared_ptr<const FftPlan> plan_for(const GridSpec& g) {
  static std::map<std::pair<int, int>, std::shared_ptr<const FftPlan>> cache;
  std::lock_guard lock(planner_mutex());
  auto key = std::make_pair(g.array_dim(), g.n);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto plan = std::make_shared<const FftPlan>(g);
  cache.emplace(key, plan);
  return plan;
}

void require_same_grid(const GridSpec& a, const GridSpec& b) {
  if (!(a == b)) throw ShapeError("grid mismatch between operands");
}

void require_shape(const Field& f) {
  if (f.values.size() != f.grid.size()) {
    throw ShapeError("field has " + std::to_string(f.values.size()) + " values, grid expects " +
                     std::to_string(f.grid.size()));
  }
}

void require_shape(const SpectralField& F) {
  if (F.coeffs.size() != F.grid.size()) {
    throw ShapeError("spectral field has " + std::to_string(F.coeffs.size()) +
                     " coefficients, grid expects " + std::to_string(F.grid.size()));
  }
}

int signed_index(int m, int n) { return m < n / 2 ? m : m - n; }

}  // namespace

std::string_view to_string(GridMode m) {
  return m == GridMode::full3d ? "full3d" : "radial1d";
}

GridMode parse_grid_mode(std::string_view s) {
  if (s == "full3d") return GridMode::full3d;
  if (s == "radial1d") return GridMode::radial1d;
  throw ShapeError("unknown grid mode '" + std::string(s) + "' (expected full3d|radial1d)");
}

void GridSpec::validate() const {
  if (n < 8 || (n & (n - 1)) != 0) {
    throw ShapeError("grid.n must be a power of two >= 8 (got " + std::to_string(n) + ")");
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw ShapeError("grid.box_length must be positive");
  }
}

std::size_t GridSpec::size() const {
  auto n_ = static_cast<std::size_t>(n);
  return mode == GridMode::full3d ? n_ * n_ * n_ : n_;
}

double GridSpec::wavenumber(int m) const {
  return 2.0 * std::numbers::pi * signed_index(m, n) / box_length;
}

double GridSpec::max_frequency() const {
  const double k = std::numbers::pi * n / box_length;
  return mode == GridMode::full3d ? std::sqrt(3.0) * k : k;
}

Field::Field(const GridSpec& g) : grid(g), values(g.size(), 0.0) {}

Field::Field(const GridSpec& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  require_shape(*this);
}

Field Field::from_function(const GridSpec& g,
                           const std::function<double(double, double, double)>& f) {
  if (g.mode != GridMode::full3d) throw ShapeError("from_function needs a full3d grid");
  Field out(g);
  std::size_t idx = 0;
  for (int i = 0; i < g.n; ++i) {
    for (int j = 0; j < g.n; ++j) {
      for (int k = 0; k < g.n; ++k) {
        out.values[idx++] = f(g.coordinate(i), g.coordinate(j), g.coordinate(k));
      }
    }
  }
  return out;
}

Field Field::from_radial(const GridSpec& g, const std::function<double(double)>& f) {
  if (g.mode == GridMode::radial1d) {
    Field out(g);
    for (int j = 0; j < g.n; ++j) out.values[static_cast<std::size_t>(j)] = f(std::abs(g.coordinate(j)));
    return out;
  }
  return from_function(g, [&](double x, double y, double z) {
    return f(std::sqrt(x * x + y * y + z * z));
  });
}

bool Field::all_finite() const {
  return std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); });
}

Field& Field::operator+=(const Field& rhs) {
  require_same_grid(grid, rhs.grid);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += rhs.values[i];
  return *this;
}

Field& Field::operator-=(const Field& rhs) {
  require_same_grid(grid, rhs.grid);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= rhs.values[i];
  return *this;
}

Field& Field::operator*=(double c) {
  for (auto& v : values) v *= c;
  return *this;
}

Field& Field::axpy(double c, const Field& x) {
  require_same_grid(grid, x.grid);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += c * x.values[i];
  return *this;
}

SpectralField::SpectralField(const GridSpec& g) : grid(g), coeffs(g.size(), cplx(0.0, 0.0)) {}

SpectralField& SpectralField::operator+=(const SpectralField& rhs) {
  require_same_grid(grid, rhs.grid);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += rhs.coeffs[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double c) {
  for (auto& v : coeffs) v *= c;
  return *this;
}

SpectralField& SpectralField::axpy(double c, const SpectralField& x) {
  require_same_grid(grid, x.grid);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += c * x.coeffs[i];
  return *this;
}

SpectralField forward(const Field& f) {
  require_shape(f);
  const GridSpec& g = f.grid;
  std::vector<cplx> in(g.size());
  if (g.mode == GridMode::full3d) {
    for (std::size_t i = 0; i < in.size(); ++i) in[i] = f.values[i];
  } else {
    for (int j = 1; j < g.n; ++j) {
      in[static_cast<std::size_t>(j)] = g.coordinate(j) * f.values[static_cast<std::size_t>(j)];
    }
    in[0] = 0.0;  // x = -L/2: odd periodic extension
  }
  SpectralField out(g);
  plan_for(g)->forward(in.data(), out.coeffs.data());
  const double scale = 1.0 / static_cast<double>(g.size());
  for (auto& c : out.coeffs) c *= scale;
  return out;
}

Field inverse(const SpectralField& F) {
  require_shape(F);
  const GridSpec& g = F.grid;
  std::vector<cplx> out(g.size());
  plan_for(g)->backward(F.coeffs.data(), out.data());
  Field f(g);
  if (g.mode == GridMode::full3d) {
    for (std::size_t i = 0; i < out.size(); ++i) f.values[i] = out[i].real();
    return f;
  }
  const int origin = g.origin_index();
  for (int j = 0; j < g.n; ++j) {
    if (j == origin) continue;
    f.values[static_cast<std::size_t>(j)] = out[static_cast<std::size_t>(j)].real() / g.coordinate(j);
  }
  // u(0) = w'(0) from the spectral derivative of w; the Nyquist mode is dropped.
  double du0 = 0.0;
  for (int m = 0; m < g.n; ++m) {
    if (m == g.n / 2) continue;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    du0 += sign * (cplx(0.0, g.wavenumber(m)) * F.coeffs[static_cast<std::size_t>(m)]).real();
  }
  f.values[static_cast<std::size_t>(origin)] = du0;
  return f;
}

std::shared_ptr<const std::vector<double>> frequency_magnitudes(const GridSpec& g) {
  static std::mutex mutex;
  static std::map<std::tuple<int, int, double>, std::shared_ptr<const std::vector<double>>> cache;
  std::lock_guard lock(mutex);
  auto key = std::make_tuple(g.array_dim(), g.n, g.box_length);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto xi = std::make_shared<std::vector<double>>(g.size());
  if (g.mode == GridMode::full3d) {
    std::size_t idx = 0;
    for (int i = 0; i < g.n; ++i) {
      const double ki = g.wavenumber(i);
      for (int j = 0; j < g.n; ++j) {
        const double kj = g.wavenumber(j);
        for (int k = 0; k < g.n; ++k) {
          const double kk = g.wavenumber(k);
          (*xi)[idx++] = std::sqrt(ki * ki + kj * kj + kk * kk);
        }
      }
    }
  } else {
    for (int m = 0; m < g.n; ++m) (*xi)[static_cast<std::size_t>(m)] = std::abs(g.wavenumber(m));
  }
  std::shared_ptr<const std::vector<double>> shared = xi;
  cache.emplace(key, shared);
  return shared;
}

SpectralField apply_multiplier(SpectralField F, const std::function<double(double)>& m) {
  require_shape(F);
  auto xi = frequency_magnitudes(F.grid);
  for (std::size_t i = 0; i < F.coeffs.size(); ++i) F.coeffs[i] *= m((*xi)[i]);
  return F;
}

Field apply_multiplier(const Field& f, const std::function<double(double)>& m) {
  return inverse(apply_multiplier(forward(f), m));
}

double conjugate_symmetry_defect(const SpectralField& F) {
  require_shape(F);
  const GridSpec& g = F.grid;
  const int n = g.n;
  auto neg = [n](int i) { return (n - i) % n; };
  double worst = 0.0, scale = 0.0;
  for (const auto& c : F.coeffs) scale = std::max(scale, std::abs(c));
  if (g.mode == GridMode::radial1d) {
    // Coefficients of w = x u: w is real, so c_{-m} = conj(c_m).
    for (int m = 0; m < n; ++m) {
      worst = std::max(worst, std::abs(F.coeffs[static_cast<std::size_t>(neg(m))] -
                                       std::conj(F.coeffs[static_cast<std::size_t>(m)])));
    }
  } else {
    auto at = [&](int i, int j, int k) {
      return F.coeffs[(static_cast<std::size_t>(i) * n + j) * n + k];
    };
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
          worst = std::max(worst, std::abs(at(neg(i), neg(j), neg(k)) - std::conj(at(i, j, k))));
        }
      }
    }
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

double grid_integral(const Field& f) {
  require_shape(f);
  const GridSpec& g = f.grid;
  const double h = g.spacing();
  double sum = 0.0;
  if (g.mode == GridMode::full3d) {
    for (double v : f.values) sum += v;
    return sum * h * h * h;
  }
  for (int j = 0; j < g.n; ++j) {
    const double x = g.coordinate(j);
    sum += x * x * f.values[static_cast<std::size_t>(j)];
  }
  // The signed line covers each radius twice: 4π ∫_0 r^2 = 2π ∫_R x^2.
  return 2.0 * std::numbers::pi * h * sum;
}

double lp_norm(const Field& f, double p) {
  require_shape(f);
  if (!(p >= 1.0)) throw DomainError("L^p norm needs p >= 1");
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  Field powered(f.grid);
  if (p == 2.0) {
    for (std::size_t i = 0; i < f.values.size(); ++i) powered.values[i] = f.values[i] * f.values[i];
  } else {
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      powered.values[i] = std::pow(std::abs(f.values[i]), p);
    }
  }
  return std::pow(grid_integral(powered), 1.0 / p);
}

double spectral_l2_squared(const SpectralField& F) {
  require_shape(F);
  double sum = 0.0;
  for (const auto& c : F.coeffs) sum += std::norm(c);
  const double L = F.grid.box_length;
  return F.grid.mode == GridMode::full3d ? L * L * L * sum : 2.0 * std::numbers::pi * L * sum;
}

double sobolev_seminorm(const Field& f, double s) {
  if (s < 0.0) throw DomainError("sobolev_seminorm needs s >= 0");
  auto F = forward(f);
  auto xi = frequency_magnitudes(f.grid);
  double sum = 0.0;
  for (std::size_t i = 0; i < F.coeffs.size(); ++i) {
    const double k = (*xi)[i];
    if (k == 0.0) continue;
    sum += std::pow(k, 2.0 * s) * std::norm(F.coeffs[i]);
  }
  const double L = f.grid.box_length;
  const double scale =
      f.grid.mode == GridMode::full3d ? L * L * L : 2.0 * std::numbers::pi * L;
  return std::sqrt(scale * sum);
}

Field fractional_derivative(const Field& f, double s) {
  if (!(s >= 0.0)) throw DomainError("fractional_derivative needs s >= 0");
  return apply_multiplier(f, [s](double k) { return k > 0.0 ? std::pow(k, s) : 0.0; });
}

Field negative_laplacian(const Field& f) {
  return apply_multiplier(f, [](double k) { return k * k; });
}

double lp_bump(double r) {
  r = std::abs(r);
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  const double t = r - 1.0;
  return std::exp(1.0 - 1.0 / (1.0 - t * t));
}

double lp_symbol(double xi, double N) { return lp_bump(xi / N) - lp_bump(2.0 * xi / N); }

DyadicRange dyadic_range(const GridSpec& g) {
  const double kmin = 2.0 * std::numbers::pi / g.box_length;
  const double kmax = g.max_frequency();
  return {static_cast<int>(std::floor(std::log2(kmin))),
          static_cast<int>(std::ceil(std::log2(kmax)))};
}

Field lp_project(const Field& f, double N) {
  const auto range = dyadic_range(f.grid);
  const double j = std::log2(N);
  if (!(N > 0.0) || j < range.j_min - 1e-9 || j > range.j_max + 1e-9) {
    std::clog << "wavelab: warning: dyadic N = " << N << " outside resolvable band [2^"
              << range.j_min << ", 2^" << range.j_max << "]; projection is zero\n";
    return Field(f.grid);
  }
  return apply_multiplier(f, [N](double k) { return lp_symbol(k, N); });
}

void dealias_two_thirds(SpectralField& F) {
  require_shape(F);
  const int n = F.grid.n;
  const int cutoff = n / 3;
  auto keep = [&](int m) { return std::abs(signed_index(m, n)) <= cutoff; };
  if (F.grid.mode == GridMode::radial1d) {
    for (int m = 0; m < n; ++m) {
      if (!keep(m)) F.coeffs[static_cast<std::size_t>(m)] = 0.0;
    }
    return;
  }
  std::size_t idx = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k, ++idx) {
        if (!keep(i) || !keep(j) || !keep(k)) F.coeffs[idx] = 0.0;
      }
    }
  }
}

namespace {

template <class T>
void put_le(std::ostream& os, T value) {
  static_assert(sizeof(T) == 8);
  auto bits = std::bit_cast<std::uint64_t>(value);
  unsigned char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xffu);
  os.write(reinterpret_cast<const char*>(bytes), 8);
}

template <class T>
T get_le(std::istream& is) {
  unsigned char bytes[8];
  if (!is.read(reinterpret_cast<char*>(bytes), 8)) throw ShapeError("truncated snapshot");
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return std::bit_cast<T>(bits);
}

}  // namespace

void write_snapshot(std::ostream& os, const Field& f, double time) {
  require_shape(f);
  put_le(os, static_cast<std::int64_t>(f.grid.mode));
  put_le(os, static_cast<std::int64_t>(f.grid.n));
  put_le(os, f.grid.box_length);
  put_le(os, time);
  for (double v : f.values) put_le(os, v);
}

void write_snapshot(const std::string& path, const Field& f, double time) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  write_snapshot(os, f, time);
}

Snapshot read_snapshot(std::istream& is) {
  GridSpec g;
  auto mode = get_le<std::int64_t>(is);
  if (mode != 0 && mode != 1) throw ShapeError("snapshot has unknown grid mode");
  g.mode = static_cast<GridMode>(mode);
  g.n = static_cast<int>(get_le<std::int64_t>(is));
  g.box_length = get_le<double>(is);
  g.validate();
  Snapshot s;
  s.time = get_le<double>(is);
  s.field = Field(g);
  for (auto& v : s.field.values) v = get_le<double>(is);
  return s;
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  return read_snapshot(is);
}

}  // namespace wavelab
