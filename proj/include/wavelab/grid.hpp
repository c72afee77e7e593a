#pragma once

// Periodic-box discretization of R^3.
//
// full3d   : n^3 nodes x = -L/2 + i h, h = L/n, row-major (x fastest last).
// radial1d : n nodes on a signed line x_j = -L/2 + j h holding a radial
//            profile u(|x_j|).  Transforms act on w = x u, which turns the
//            3-D radial Laplacian into d^2/dx^2; any Fourier multiplier
//            m(|ξ|) then acts on w as a 1-D multiplier.  Radial fields
//            must vanish at the box edge (w is odd and periodic).
//
// Spectral coefficients are normalized Fourier coefficients:
// c_k = (1/N) Σ_j f_j e^{-2πi k·j/n}.

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wavelab {

enum class GridMode : std::int64_t { full3d = 0, radial1d = 1 };

std::string_view to_string(GridMode m);
GridMode parse_grid_mode(std::string_view s);

struct GridSpec {
  GridMode mode = GridMode::radial1d;
  int n = 512;
  double box_length = 32.0;

  /// Throws ShapeError unless n >= 8 is a power of two and L > 0.
  void validate() const;

  int array_dim() const { return mode == GridMode::full3d ? 3 : 1; }
  std::size_t size() const;
  double spacing() const { return box_length / n; }
  double coordinate(int i) const { return -0.5 * box_length + i * spacing(); }
  /// Signed wavenumber 2πk/L for DFT index m, k ∈ [-n/2, n/2).
  double wavenumber(int m) const;
  /// Largest |ξ| on the frequency grid.
  double max_frequency() const;
  /// Index of the x = 0 node along one axis.
  int origin_index() const { return n / 2; }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct Field {
  GridSpec grid;
  std::vector<double> values;

  Field() = default;
  explicit Field(const GridSpec& g);
  Field(const GridSpec& g, std::vector<double> v);

  /// f(x, y, z) sampled on a full3d grid.
  static Field from_function(const GridSpec& g,
                             const std::function<double(double, double, double)>& f);
  /// Radial profile f(r), on either grid mode.
  static Field from_radial(const GridSpec& g, const std::function<double(double)>& f);

  std::size_t size() const { return values.size(); }
  bool all_finite() const;

  Field& operator+=(const Field& rhs);
  Field& operator-=(const Field& rhs);
  Field& operator*=(double c);
  /// this += c * x
  Field& axpy(double c, const Field& x);
  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double c, Field a) { return a *= c; }
};

struct SpectralField {
  GridSpec grid;
  std::vector<std::complex<double>> coeffs;

  SpectralField() = default;
  explicit SpectralField(const GridSpec& g);

  SpectralField& operator+=(const SpectralField& rhs);
  SpectralField& operator*=(double c);
  /// this += c * x
  SpectralField& axpy(double c, const SpectralField& x);
};

SpectralField forward(const Field& f);
Field inverse(const SpectralField& F);

/// Cached |ξ| per spectral coefficient, shared between callers.
std::shared_ptr<const std::vector<double>> frequency_magnitudes(const GridSpec& g);

/// Multiplies each coefficient by m(|ξ|).
SpectralField apply_multiplier(SpectralField F, const std::function<double(double)>& m);
Field apply_multiplier(const Field& f, const std::function<double(double)>& m);

/// Maximal deviation from conjugate symmetry, relative to max |c|.
double conjugate_symmetry_defect(const SpectralField& F);

/// ∫ f d^3x by the grid rule (Riemann sum; spherical weight 4πr^2 in radial mode).
double grid_integral(const Field& f);
/// ‖f‖_{L^p(R^3)}; p = +inf gives the grid maximum of |f|.
double lp_norm(const Field& f, double p);
/// Σ-side of Parseval: ∫|f|^2 computed from coefficients.
double spectral_l2_squared(const SpectralField& F);
/// ‖D^s f‖_{L^2} by Parseval (zero mode excluded).
double sobolev_seminorm(const Field& f, double s);

/// D^s = multiplier |ξ|^s, zero mode annihilated.  s < 0 is a DomainError.
Field fractional_derivative(const Field& f, double s);
/// -Δ f
Field negative_laplacian(const Field& f);

/// Littlewood-Paley bump: 1 on [0,1], exp(1 - 1/(1-(r-1)^2)) on (1,2), 0 beyond.
double lp_bump(double r);
/// φ(ξ/N) - φ(2ξ/N)
double lp_symbol(double xi, double N);

struct DyadicRange {
  int j_min = 0;
  int j_max = 0;
};

/// Dyadic exponents j with 2^j covering [2π/L, max|ξ|]; the blocks outside
/// this range vanish identically on the grid.
DyadicRange dyadic_range(const GridSpec& g);

/// P_N f for dyadic N.  N outside the resolvable band returns a zero field
/// and writes a warning to std::clog.
Field lp_project(const Field& f, double N);

/// Zeroes modes with |k| > n/3 along any axis.
void dealias_two_thirds(SpectralField& F);

/// Snapshot file: little-endian header {int64 mode, int64 n, float64 L,
/// float64 time} followed by the field values as float64, row-major.
void write_snapshot(std::ostream& os, const Field& f, double time);
void write_snapshot(const std::string& path, const Field& f, double time);
struct Snapshot {
  Field field;
  double time = 0.0;
};
Snapshot read_snapshot(std::istream& is);
Snapshot read_snapshot(const std::string& path);

}  // namespace wavelab
