#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace embedlab {

/// Tree describing a norm functional.
///
/// Text grammar (whitespace ignored, axes are 1-based in text, 0-based in code):
///
///     spec  := leb | lor | mix | ilor
///     leb   := "Leb(" [ "p=" ] num ")"
///     lor   := "Lor(" [ ("p=" | "q=") ] num "," [ "r=" ] num ")"
///     ilor  := "ILor(" [ "p=" ] num "," [ "nu=" ] num "," "k=" int ")"
///     mix   := "Mix(" "k=" int ";" spec ";" spec ")"
///
/// Examples: "Leb(2)", "Lor(q=3,r=1)", "Mix(k=1;Leb(1);Lor(3,1))", "ILor(2,1,k=1)".
/// Mix applies the inner spec to every 1-D line along axis k and the outer spec
/// to the resulting (n-1)-D function.
class NormSpec {
 public:
  enum class Kind { lebesgue, lorentz, mixed, iterated_lorentz };

  static NormSpec lebesgue(double p);
  static NormSpec lorentz(double p, double r);
  static NormSpec mixed(int axis, const NormSpec& inner, const NormSpec& outer);
  static NormSpec iterated_lorentz(double p, double nu, int axis);

  static NormSpec parse(std::string_view text);

  Kind kind() const { return kind_; }
  double p() const { return p_; }
  /// Secondary index: r for Lorentz, nu for IteratedLorentz.
  double secondary() const { return secondary_; }
  int axis() const { return axis_; }
  const NormSpec& inner() const { return *inner_; }
  const NormSpec& outer() const { return *outer_; }

  /// Number of nested Mixed levels (0 for a plain norm).
  int mixed_depth() const;

  std::string to_string() const;

 private:
  NormSpec() = default;

  Kind kind_ = Kind::lebesgue;
  double p_ = 1.0;
  double secondary_ = 1.0;
  int axis_ = 0;
  std::shared_ptr<const NormSpec> inner_;
  std::shared_ptr<const NormSpec> outer_;
};

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

}  // namespace embedlab
