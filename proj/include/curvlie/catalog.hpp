#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvlie/extension.hpp"
#include "curvlie/metric.hpp"

namespace curvlie {

/// Nilpotent derived algebras occurring in dimensions 4 and 5.
enum class NilType { A3, H3, A4, B4, C4 };

inline const char* nil_tag(NilType t) {
  switch (t) {
    case NilType::A3: return "A3";
    case NilType::H3: return "H3";
    case NilType::A4: return "A4";
    case NilType::B4: return "B4";
    case NilType::C4: return "C4";
  }
  return "?";
}

inline LieAlgebra nil_algebra(NilType t) {
  switch (t) {
    case NilType::A3: return abelian(3);
    case NilType::H3: return heisenberg3();
    case NilType::A4: return abelian(4);
    case NilType::B4: return filiform4();
    case NilType::C4: return heisenberg3_plus_line();
  }
  throw InputError("unknown nilpotent type");
}

enum class Family {
  F4A1, F4A2, F4A3, F4A4, F4B1, F4B2, F4B3,
  F5A1, F5A2, F5A3, F5A4, F5A5, F5A6, F5A7, F5A8, F5A9,
  F5B1, F5B2, F5B3,
  F5C1, F5C2, F5C3, F5C4, F5C5, F5C6, F5C7, F5C8, F5C9, F5C10, F5C11, F5C12, F5C13,
};

using Params = std::vector<double>;

struct FamilyInfo {
  Family family;
  std::string tag;
  int dim;
  NilType nil;
  std::vector<std::string> params;
  std::string printed_range;
  std::string canonical_range;
};

inline const std::vector<FamilyInfo>& all_families() {
  static const std::vector<FamilyInfo> table = {
      {Family::F4A1, "4A1", 4, NilType::A3, {"x", "y"}, "0 < x <= y <= 1", "0 < x <= y <= 1"},
      {Family::F4A2, "4A2", 4, NilType::A3, {"z"}, "0 < z", "0 < z"},
      {Family::F4A3, "4A3", 4, NilType::A3, {}, "", ""},
      {Family::F4A4, "4A4", 4, NilType::A3, {"alpha", "beta"}, "0 < alpha, beta", "0 < alpha, beta"},
      {Family::F4B1, "4B1", 4, NilType::H3, {"x"}, "0 < x <= 1/2", "0 < x <= 1/2"},
      {Family::F4B2, "4B2", 4, NilType::H3, {}, "", ""},
      {Family::F4B3, "4B3", 4, NilType::H3, {"alpha"}, "0 < alpha", "0 < alpha"},
      {Family::F5A1, "5A1", 5, NilType::A4, {"x1", "x2", "x3"}, "0 < x1 <= x2 <= x3 <= 1", "0 < x1 <= x2 <= x3 <= 1"},
      {Family::F5A2, "5A2", 5, NilType::A4, {"y1", "y2"}, "0 < y1 <= y2", "0 < y1 <= y2"},
      {Family::F5A3, "5A3", 5, NilType::A4, {"y1", "y2", "beta"}, "0 < y1 <= y2, 0 < beta", "0 < y1 <= y2, 0 < beta"},
      {Family::F5A4, "5A4", 5, NilType::A4, {"y1"}, "0 < y1", "0 < y1"},
      {Family::F5A5, "5A5", 5, NilType::A4, {"y1"}, "0 < y1", "0 < y1 <= 1"},
      {Family::F5A6, "5A6", 5, NilType::A4, {"y1", "beta"}, "0 < y1, 0 < beta", "0 < y1, 0 < beta"},
      {Family::F5A7, "5A7", 5, NilType::A4, {"alpha", "beta", "beta'"}, "0 < alpha, beta, beta'",
       "0 < alpha <= 1, 0 < beta, beta'; beta <= beta' when alpha = 1"},
      {Family::F5A8, "5A8", 5, NilType::A4, {}, "", ""},
      {Family::F5A9, "5A9", 5, NilType::A4, {"beta", "beta'"}, "0 < beta, beta'", "0 < beta = beta'"},
      {Family::F5B1, "5B1", 5, NilType::B4, {"x"}, "0 < x", "0 < x"},
      {Family::F5B2, "5B2", 5, NilType::B4, {}, "", ""},
      {Family::F5B3, "5B3", 5, NilType::B4, {"beta"}, "0 < beta", "empty (no derivation of this form)"},
      {Family::F5C1, "5C1", 5, NilType::C4, {"x1", "x2"}, "0 < x1, x2", "0 < x1 <= 1, 0 < x2"},
      {Family::F5C2, "5C2", 5, NilType::C4, {"x"}, "0 < x", "0 < x"},
      {Family::F5C3, "5C3", 5, NilType::C4, {"x", "alpha"}, "0 < x, alpha", "0 < x, alpha"},
      {Family::F5C4, "5C4", 5, NilType::C4, {"x"}, "1 <= x", "1 <= x"},
      {Family::F5C5, "5C5", 5, NilType::C4, {"alpha"}, "0 < alpha", "empty (isomorphic to 5C3 with x = 1)"},
      {Family::F5C6, "5C6", 5, NilType::C4, {"x"}, "0 < x <= 1", "0 < x < 1"},
      {Family::F5C7, "5C7", 5, NilType::C4, {"alpha"}, "0 < alpha", "empty (isomorphic to 5C3 with x = 1)"},
      {Family::F5C8, "5C8", 5, NilType::C4, {}, "", ""},
      {Family::F5C9, "5C9", 5, NilType::C4, {}, "", "empty (isomorphic to 5C2 with x = 1)"},
      {Family::F5C10, "5C10", 5, NilType::C4, {}, "", "empty (isomorphic to 5C8)"},
      {Family::F5C11, "5C11", 5, NilType::C4, {"x"}, "0 < x", "1 <= x"},
      {Family::F5C12, "5C12", 5, NilType::C4, {}, "", ""},
      {Family::F5C13, "5C13", 5, NilType::C4, {"alpha"}, "0 < alpha", "0 < alpha"},
  };
  return table;
}

inline const FamilyInfo& family_info(Family f) {
  for (const auto& i : all_families())
    if (i.family == f) return i;
  throw InputError("unknown family");
}

inline std::optional<Family> family_from_tag(const std::string& tag) {
  for (const auto& i : all_families())
    if (i.tag == tag) return i.family;
  return std::nullopt;
}

inline std::vector<Family> families_of_dim(int dim) {
  std::vector<Family> out;
  for (const auto& i : all_families())
    if (i.dim == dim) out.push_back(i.family);
  return out;
}

namespace detail {

inline Mat from_columns(int n, std::initializer_list<std::initializer_list<double>> cols) {
  Mat m = Mat::Zero(n, n);
  int j = 0;
  for (const auto& c : cols) {
    int i = 0;
    for (double v : c) m(i++, j) = v;
    ++j;
  }
  return m;
}

inline void expect_params(Family f, const Params& p) {
  if (p.size() != family_info(f).params.size())
    throw InputError("family " + family_info(f).tag + " expects " + std::to_string(family_info(f).params.size()) +
                     " parameter(s)");
  for (double v : p)
    if (!std::isfinite(v)) throw InputError("non-finite parameter");
}

}  // namespace detail

/// The derivation D (column j = [e_n, e_j]) exactly as the bracket list prints it.
inline Mat printed_derivation(Family f, const Params& p) {
  using detail::from_columns;
  detail::expect_params(f, p);
  const double h = 0.5;
  switch (f) {
    case Family::F4A1: return from_columns(3, {{p[0], 0, 0}, {0, p[1], 0}, {0, 0, 1}});
    case Family::F4A2: return from_columns(3, {{p[0], 0, 0}, {0, 1, 0}, {0, 1, 1}});
    case Family::F4A3: return from_columns(3, {{1, 0, 0}, {1, 1, 0}, {0, 1, 1}});
    case Family::F4A4: return from_columns(3, {{p[0], p[1], 0}, {-p[1], p[0], 0}, {0, 0, 1}});
    case Family::F4B1: return from_columns(3, {{1 - p[0], 0, 0}, {0, p[0], 0}, {0, 0, 1}});
    case Family::F4B2: return from_columns(3, {{h, 0, 0}, {1, h, 0}, {0, 0, 1}});
    case Family::F4B3: return from_columns(3, {{h, p[0], 0}, {-p[0], h, 0}, {0, 0, 1}});
    case Family::F5A1: return from_columns(4, {{p[0], 0, 0, 0}, {0, p[1], 0, 0}, {0, 0, p[2], 0}, {0, 0, 0, 1}});
    case Family::F5A2: return from_columns(4, {{p[0], 0, 0, 0}, {0, p[1], 0, 0}, {0, 0, 1, 0}, {0, 0, 1, 1}});
    case Family::F5A3:
      return from_columns(4, {{p[0], 0, 0, 0}, {0, p[1], 0, 0}, {0, 0, 1, p[2]}, {0, 0, -p[2], 1}});
    case Family::F5A4: return from_columns(4, {{p[0], 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}});
    case Family::F5A5: return from_columns(4, {{p[0], 0, 0, 0}, {1, p[0], 0, 0}, {0, 0, 1, 0}, {0, 0, 1, 1}});
    case Family::F5A6:
      return from_columns(4, {{p[0], 0, 0, 0}, {1, p[0], 0, 0}, {0, 0, 1, p[1]}, {0, 0, -p[1], 1}});
    case Family::F5A7:
      return from_columns(4, {{p[0], p[1], 0, 0}, {-p[1], p[0], 0, 0}, {0, 0, 1, p[2]}, {0, 0, -p[2], 1}});
    case Family::F5A8: return from_columns(4, {{1, 0, 0, 0}, {1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}});
    case Family::F5A9:
      return from_columns(4, {{1, p[0], 0, 0}, {-p[0], 1, 0, 0}, {1, 0, 1, p[1]}, {0, 1, -p[1], 1}});
    case Family::F5B1: return from_columns(4, {{1, 0, 0, 0}, {0, p[0], 0, 0}, {0, 0, 1 + p[0], 0}, {0, 0, 0, 2 + p[0]}});
    case Family::F5B2: return from_columns(4, {{1, 0, 0, 0}, {1, 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 3}});
    case Family::F5B3: return from_columns(4, {{1, p[0], 0, 0}, {-p[0], 1, 0, 0}, {0, 0, 2, 0}, {0, 0, 0, 3}});
    case Family::F5C1: return from_columns(4, {{1, 0, 0, 0}, {0, p[0], 0, 0}, {0, 0, p[1], 0}, {0, 0, 0, 1 + p[0]}});
    case Family::F5C2: return from_columns(4, {{1, 0, 0, 0}, {1, 1, 0, 0}, {0, 0, p[0], 0}, {0, 0, 0, 2}});
    case Family::F5C3:
      return from_columns(4, {{1, p[1], 0, 0}, {-p[1], 1, 0, 0}, {0, 0, p[0], 0}, {0, 0, 0, 2}});
    case Family::F5C4: return from_columns(4, {{1, 0, 1, 0}, {0, p[0], 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1 + p[0]}});
    case Family::F5C5: return from_columns(4, {{1, p[0], 1, 0}, {-p[0], 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 2}});
    case Family::F5C6: return from_columns(4, {{p[0], 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 1 + p[0]}});
    case Family::F5C7: return from_columns(4, {{1, p[0], 0, 0}, {-p[0], 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 2}});
    case Family::F5C8: return from_columns(4, {{1, 0, 1, 0}, {1, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 2}});
    case Family::F5C9: return from_columns(4, {{1, 0, 0, 0}, {1, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 2}});
    case Family::F5C10: return from_columns(4, {{1, 0, 1, 0}, {1, 1, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 2}});
    case Family::F5C11:
      return from_columns(4, {{p[0], 0, 0, 0}, {0, 1, 0, 0}, {0, 0, p[0] + 1, 1}, {0, 0, 0, p[0] + 1}});
    case Family::F5C12: return from_columns(4, {{h, 0, 0, 0}, {1, h, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}});
    case Family::F5C13: return from_columns(4, {{h, p[0], 0, 0}, {-p[0], h, 0, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}});
  }
  throw InputError("unknown family");
}

/// True when the printed bracket list is a genuine Lie algebra.
inline bool printed_is_realizable(Family f) { return f != Family::F5B2 && f != Family::F5B3; }

/// The derivation used to realize the family. 5B2 uses the transposed Jordan
/// block (the printed one is not a derivation of B4); 5B3 has no realization.
inline Mat catalog_derivation(Family f, const Params& p) {
  if (f == Family::F5B2) {
    Mat d = printed_derivation(f, p);
    d(0, 1) = 0;
    d(1, 0) = 1;
    return d;
  }
  if (f == Family::F5B3)
    throw InputError("5B3 is not realizable: the rotation block needs x12 != 0, which no derivation of B4 has");
  return printed_derivation(f, p);
}

inline bool in_printed_range(Family f, const Params& p) {
  detail::expect_params(f, p);
  auto pos = [&](size_t i) { return p[i] > 0; };
  switch (f) {
    case Family::F4A1: return pos(0) && p[0] <= p[1] && p[1] <= 1;
    case Family::F4B1: return pos(0) && p[0] <= 0.5;
    case Family::F5A1: return pos(0) && p[0] <= p[1] && p[1] <= p[2] && p[2] <= 1;
    case Family::F5A2: return pos(0) && p[0] <= p[1];
    case Family::F5A3: return pos(0) && p[0] <= p[1] && pos(2);
    case Family::F5C4: return p[0] >= 1;
    case Family::F5C6: return pos(0) && p[0] <= 1;
    default:
      for (size_t i = 0; i < p.size(); ++i)
        if (!pos(i)) return false;
      return true;
  }
}

/// Ranges on which (family, params) determines the isomorphism class uniquely.
inline bool in_canonical_range(Family f, const Params& p, double tol = 1e-9) {
  if (!in_printed_range(f, p)) return false;
  switch (f) {
    case Family::F5A5: return p[0] <= 1 + tol;
    case Family::F5A7: return p[0] < 1 - tol || (p[0] <= 1 + tol && p[1] <= p[2] + tol);
    case Family::F5A9: return std::abs(p[0] - p[1]) <= tol * std::max(1.0, p[0]);
    case Family::F5B3: return false;
    case Family::F5C1: return p[0] <= 1 + tol;
    case Family::F5C5:
    case Family::F5C7:
    case Family::F5C9:
    case Family::F5C10: return false;
    case Family::F5C6: return p[0] < 1 - tol;
    case Family::F5C11: return p[0] >= 1 - tol;
    default: return true;
  }
}

/// Printed families that are isomorphic to another family's member.
inline std::vector<std::string> printed_aliases(Family f) {
  switch (f) {
    case Family::F5C3: return {"5C5(alpha) and 5C7(alpha) are isomorphic to 5C3(x=1, alpha)"};
    case Family::F5C2: return {"5C9 is isomorphic to 5C2(x=1)"};
    case Family::F5C8: return {"5C10 is isomorphic to 5C8"};
    case Family::F5C4: return {"5C6(x=1) is isomorphic to 5C4(x=1)"};
    default: return {};
  }
}

/// The standard metric Lie algebra n(D) of a family member (identity Gram).
inline MetricAlgebra catalog_instantiate(Family f, const Params& p, const ToleranceConfig& tc = {}) {
  const auto& info = family_info(f);
  if (!in_printed_range(f, p)) throw InputError("parameters out of range for " + info.tag + ": " + info.printed_range);
  Mat d = catalog_derivation(f, p);
  return MetricAlgebra(expand(nil_algebra(info.nil), d, tc).total);
}

namespace detail {
inline std::vector<Params> product(const std::vector<std::vector<double>>& axes) {
  std::vector<Params> out{{}};
  for (const auto& ax : axes) {
    std::vector<Params> next;
    for (const auto& p : out)
      for (double v : ax) {
        Params q = p;
        q.push_back(v);
        next.push_back(q);
      }
    out = next;
  }
  return out;
}
}  // namespace detail

/// Parameter grid inside the canonical range, at least five values per parameter.
inline std::vector<Params> canonical_grid(Family f) {
  const std::vector<double> unit = {0.2, 0.4, 0.6, 0.8, 1.0};
  const std::vector<double> wide = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<Params> all;
  switch (f) {
    case Family::F4A1: all = detail::product({unit, unit}); break;
    case Family::F4B1: all = detail::product({{0.05, 0.15, 0.25, 0.35, 0.45, 0.5}}); break;
    case Family::F5A1: all = detail::product({unit, unit, unit}); break;
    case Family::F5A5: all = detail::product({unit}); break;
    case Family::F5A7: all = detail::product({unit, wide, wide}); break;
    case Family::F5A9:
      for (double b : wide) all.push_back({b, b});
      break;
    case Family::F5C1: all = detail::product({unit, wide}); break;
    case Family::F5C4:
    case Family::F5C11: all = detail::product({{1.0, 1.5, 2.0, 3.0, 4.0}}); break;
    case Family::F5C6: all = detail::product({{0.1, 0.3, 0.5, 0.7, 0.9}}); break;
    default: {
      std::vector<std::vector<double>> axes(family_info(f).params.size(), wide);
      all = detail::product(axes);
    }
  }
  std::vector<Params> out;
  for (const auto& p : all)
    if (in_printed_range(f, p) && (in_canonical_range(f, p) || !printed_is_realizable(f) ||
                                   f == Family::F5C5 || f == Family::F5C7 || f == Family::F5C9 ||
                                   f == Family::F5C10))
      out.push_back(p);
  return out;
}

/// Printed-range points outside the canonical range, with the canonical
/// member they must classify to.
struct EquivalenceCase {
  Family family;
  Params params;
  Family expect_family;
  Params expect_params;
};

inline std::vector<EquivalenceCase> equivalence_cases() {
  return {
      {Family::F5A5, {2.0}, Family::F5A5, {0.5}},
      {Family::F5A5, {4.0}, Family::F5A5, {0.25}},
      {Family::F5A7, {2.0, 1.0, 0.5}, Family::F5A7, {0.5, 0.25, 0.5}},
      {Family::F5A7, {1.0, 2.0, 0.5}, Family::F5A7, {1.0, 0.5, 2.0}},
      {Family::F5A9, {1.0, 2.0}, Family::F5A7, {1.0, 1.0, 2.0}},
      {Family::F5C1, {2.0, 3.0}, Family::F5C1, {0.5, 1.5}},
      {Family::F5C6, {1.0}, Family::F5C4, {1.0}},
      {Family::F5C11, {0.5}, Family::F5C11, {2.0}},
      {Family::F5C11, {0.25}, Family::F5C11, {4.0}},
      {Family::F5C5, {1.0}, Family::F5C3, {1.0, 1.0}},
      {Family::F5C7, {2.0}, Family::F5C3, {1.0, 2.0}},
      {Family::F5C9, {}, Family::F5C2, {1.0}},
      {Family::F5C10, {}, Family::F5C8, {}},
  };
}

}  // namespace curvlie
