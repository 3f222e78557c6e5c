#pragma once

#include "walkerlie/report.hpp"
#include "walkerlie/specfile.hpp"

namespace walkerlie {

/// Full verification pipeline for the document's kind:
///   walker3 / walker4 / walker_general -> metric, inverse, curvature,
///     canonical-distribution checks, strictness, structure algebra,
///     structure equation, developing of declared curves;
///   lie_group -> Koszul pipeline over the declared subspaces;
///   deformation -> per-grid-point classification scan.
Report run_check(const SpecDocument& doc);

/// Tensors only; when `at` is set, numeric values at that point are
/// reported next to the symbolic entries.
Report run_curvature(const SpecDocument& doc, const std::optional<Point>& at = std::nullopt);

/// Classification of the declared algebra (lie_group / deformation kinds).
Report run_classify(const SpecDocument& doc);

/// Develops the declared curves (walker kinds).
Report run_develop(const SpecDocument& doc);

/// Scans the declared family over its grid (deformation kind).
Report run_deform(const SpecDocument& doc);

}  // namespace walkerlie
