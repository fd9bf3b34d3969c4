#pragma once

#include <optional>

#include "vag/geodesy.hpp"
#include "vag/report.hpp"

namespace vag {

enum class Family { A, B };

/// l(x^a y^b (y^t)^c) = a + b + c + 2, for a, b >= 0 and c > 0.
Int closed_form_length_a(Int a, Int b, Int c);
/// l(x^d (x^tau)^e y^f) = d + e + f + 2 when e <= d, else d + e + f + 4;
/// requires d, f >= 0 and e > 0.
Int closed_form_length_b(Int d, Int e, Int f);
Int closed_form_length_h(Family family, Int p1, Int p2, Int p3);

/// w = w1 tau x^e tau w2 with w1, w2 positive words in x and y.
struct StarDecomposition {
  Word w1;
  Int e = 0;
  Word w2;

  friend bool operator==(const StarDecomposition&, const StarDecomposition&) = default;
};

/// Named letters and lattice generators of the weighted example H (or any
/// group that carries the same symbols: x X y Y t tau and generators x, x_tau,
/// y, y_t). Throws NotConfigured when something is missing.
class HModel {
 public:
  explicit HModel(const VAGroup& group);

  const VAGroup& group() const noexcept { return *group_; }
  std::size_t x() const noexcept { return x_; }
  std::size_t x_inv() const noexcept { return X_; }
  std::size_t y() const noexcept { return y_; }
  std::size_t y_inv() const noexcept { return Y_; }
  std::size_t t() const noexcept { return t_; }
  std::size_t tau() const noexcept { return tau_; }

  /// Built from lattice generator images, not from words.
  GroupElement family_a(Int a, Int b, Int c) const;
  GroupElement family_b(Int d, Int e, Int f) const;
  /// x^d (x^tau)^e y^f (y^t)^c
  GroupElement mixed(Int d, Int e, Int f, Int c) const;

  /// x^a y^b t y^c t
  Word family_a_word(Int a, Int b, Int c) const;
  /// x^d tau x^e tau y^f
  Word star_word(Int d, Int e, Int f) const;
  /// x^-1 y^(f+e) t y^e t, the extra geodesic when e = d + 1.
  Word alternative_word(Int e, Int f) const;

  std::optional<StarDecomposition> match_star(const Word& w) const;
  Word reassemble(const StarDecomposition& s) const;
  /// Number of x letters and y letters in the flanks w1, w2.
  std::pair<Int, Int> flank_counts(const StarDecomposition& s) const;

 private:
  const VAGroup* group_;
  std::size_t x_, X_, y_, Y_, t_, tau_;
  IntVector gx_, gx_tau_, gy_, gy_t_;
};

struct DeltaShift {
  Int d = 0, e = 0, f = 0, c = 0;
  friend bool operator==(const DeltaShift&, const DeltaShift&) = default;
};

/// x^d (x^tau)^e y^f = x^(d-δ) (x^tau)^(e-δ) y^(f+δ) (y^t)^δ. Returns the
/// shifted tuple after checking both sides evaluate to the same element.
DeltaShift delta_shift(const HModel& h, Int d, Int e, Int f, Int delta);

/// Closed forms against the table over 0<=a,b<=ab_max, 1<=c<=c_max and
/// 0<=d<=d_max, 1<=e<=e_max, 0<=f<=f_max.
struct FormulaGrid {
  Int ab_max = 4, c_max = 4;
  Int d_max = 4, e_max = 5, f_max = 2;
  Int required_radius() const;
};
CheckReport verify_length_formulas(const HModel& h, const LengthTable& table, const FormulaGrid& grid = {});

/// For 0<=d<=d_max, 1<=e<=e_max, 0<=f<=f_max: the word x^d tau x^e tau y^f is
/// geodesic iff e > d; for e > d+1 every geodesic matches (*) with flanks
/// holding d x's and f y's; for e = d+1 the alternative word is a geodesic
/// that does not match (*).
CheckReport verify_star_characterization(const HModel& h, const LengthTable& table, Int d_max, Int e_max, Int f_max);

/// l >= |eps|; parity on N; +2 outside <x,y>; +4 outside <x,y,t>.
CheckReport epsilon_audit(const HModel& h, const LengthTable& table);

}  // namespace vag
