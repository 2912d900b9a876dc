#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shadowlab/deciders.hpp"
#include "shadowlab/induced.hpp"

namespace shadowlab {

enum class Constructor { Hyperspace, Sym2, Sym3, SelfProduct, Tower };

inline constexpr std::array<std::pair<Constructor, std::string_view>, 5> kConstructorNames{{
    {Constructor::Hyperspace, "hyperspace"},
    {Constructor::Sym2, "F2"},
    {Constructor::Sym3, "F3"},
    {Constructor::SelfProduct, "product"},
    {Constructor::Tower, "tower"},
}};

inline std::string_view constructor_name(Constructor c) {
  for (const auto& [k, n] : kConstructorNames)
    if (k == c) return n;
  return "?";
}

/// One positive cell of the preservation table: base has P => induced has P.
/// `always` cells assert the induced property outright.
struct TableCell {
  Property property;
  Constructor constructor;
  bool needs_surjective = false;
  bool always = false;
};

/// The positive cells checkable on finite systems. Tower cells use the
/// 2-level constant tower, which is the inverse limit only for onto maps.
inline std::vector<TableCell> positive_cells() {
  using P = Property;
  using C = Constructor;
  std::vector<TableCell> cells = {
      {P::Shadowing, C::Hyperspace}, {P::Shadowing, C::Sym2},        {P::Shadowing, C::SelfProduct},
      {P::Shadowing, C::Tower, true},

      {P::HShadowing, C::Hyperspace}, {P::HShadowing, C::Sym2},      {P::HShadowing, C::SelfProduct, true},

      {P::Eventual, C::Sym2},        {P::Eventual, C::SelfProduct},  {P::Eventual, C::Tower, true},

      {P::Orbital, C::Tower, true},  {P::Weak1, C::Tower, true},

      {P::Limit, C::Sym2},           {P::Limit, C::SelfProduct},     {P::SLimit, C::Sym2},
      {P::SLimit, C::SelfProduct},

      {P::Inverse, C::Hyperspace, true}, {P::Inverse, C::Sym2, true}, {P::Inverse, C::Sym3, true},
      {P::Inverse, C::SelfProduct, true}, {P::Inverse, C::Tower, true},
  };
  for (const auto& [c, name] : kConstructorNames) cells.push_back({P::Weak2, c, false, true});
  return cells;
}

struct TableCaps {
  /// Largest base for 2^X.
  std::size_t hyperspace_base = 10;
  std::size_t max_points = 4096;
  DecideOptions decide;
};

enum class CellStatus { Pass, Violation, NotApplicable, CapBreach };

inline std::string_view status_name(CellStatus s) {
  switch (s) {
    case CellStatus::Pass: return "pass";
    case CellStatus::Violation: return "VIOLATION";
    case CellStatus::NotApplicable: return "n/a";
    case CellStatus::CapBreach: return "cap";
  }
  return "?";
}

struct TableRow {
  std::string system_id;
  TableCell cell;
  std::optional<bool> base_has;
  std::optional<bool> induced_has;
  CellStatus status = CellStatus::Pass;
  std::string detail;
};

struct TableSummary {
  std::size_t systems = 0;
  std::size_t cells = 0;
  std::size_t passed = 0;
  std::size_t violations = 0;
  std::size_t not_applicable = 0;
  std::size_t cap_breaches = 0;
};

struct BatchReport {
  std::vector<TableRow> rows;
  TableSummary summary;
};

inline FiniteMetricSystem build_induced(const FiniteMetricSystem& base, Constructor c, const TableCaps& caps) {
  InducedCaps ic;
  ic.max_points = caps.max_points;
  ic.hyperspace_base = caps.hyperspace_base;
  switch (c) {
    case Constructor::Hyperspace: return hyperspace_system(base, ic).system;
    case Constructor::Sym2: return symmetric_product(base, 2, ic).system;
    case Constructor::Sym3: return symmetric_product(base, 3, ic).system;
    case Constructor::SelfProduct: return product_system({base, base}, ic).system;
    case Constructor::Tower: return inverse_limit(base, 2).system;
  }
  throw DomainError("unknown constructor");
}

/// Runs every positive cell on every system. Property scans are cached per
/// (system, constructor, property).
inline BatchReport replicate_table(const std::vector<std::pair<std::string, FiniteMetricSystem>>& systems,
                                   const TableCaps& caps = {}) {
  BatchReport rep;
  const auto cells = positive_cells();
  for (const auto& [id, base] : systems) {
    ++rep.summary.systems;
    std::map<Property, bool> base_level;
    std::map<Constructor, std::optional<FiniteMetricSystem>> induced;
    std::map<Constructor, std::string> build_error;
    for (const auto& cell : cells) {
      TableRow row{id, cell, std::nullopt, std::nullopt, CellStatus::Pass, {}};
      const bool onto = base.is_surjective();
      const bool needs_onto = cell.needs_surjective || cell.property == Property::Inverse;
      if (needs_onto && !onto) {
        row.status = CellStatus::NotApplicable;
        row.detail = "base map is not onto";
      } else {
        try {
          if (!cell.always) {
            auto it = base_level.find(cell.property);
            if (it == base_level.end())
              it = base_level.emplace(cell.property, property_level(base, cell.property, caps.decide).holds).first;
            row.base_has = it->second;
          }
          if (!row.base_has || *row.base_has) {
            auto& sys = induced[cell.constructor];
            if (!sys) sys = build_induced(base, cell.constructor, caps);
            row.induced_has = property_level(*sys, cell.property, caps.decide).holds;
            if (!*row.induced_has) row.status = CellStatus::Violation;
          }
        } catch (const BudgetError& e) {
          row.status = CellStatus::CapBreach;
          row.detail = e.what();
        }
      }
      ++rep.summary.cells;
      switch (row.status) {
        case CellStatus::Pass: ++rep.summary.passed; break;
        case CellStatus::Violation: ++rep.summary.violations; break;
        case CellStatus::NotApplicable: ++rep.summary.not_applicable; break;
        case CellStatus::CapBreach: ++rep.summary.cap_breaches; break;
      }
      rep.rows.push_back(std::move(row));
    }
  }
  return rep;
}

}  // namespace shadowlab
