#pragma once

#include "prelie/ainfinity.hpp"
#include "prelie/linalg.hpp"

namespace prelie {

/// Hochschild differential d(f) = [mu, f] = mu * f - (-1)^|f| f * mu.
Cochain differential(const Cochain& f, const AStructure& a, const WeightWindow& win);

struct WeightLineReport {
  int weight = -1;  // -1: aggregated block of a weight-mixing differential
  std::size_t cocycle_dim = 0;
  std::size_t boundary_dim = 0;
  std::size_t class_dim = 0;
  bool exact = false;
  std::vector<Cochain> representatives;
};

/// Kernel, image and quotient data of HH^n within a weight window. With a
/// finitely supported structure the differential is computed in full, so
/// every reported line is exact; the window only bounds which weights are
/// enumerated. tail_vanishes certifies that no weight beyond the cutoff can
/// carry classes of this degree, by the graph's degree bounds.
struct CohomologyReport {
  int hh_degree = 0;
  WeightWindow window;
  bool per_weight_lines = false;  // single-weight minimal structures split
  std::vector<WeightLineReport> lines;
  std::size_t total_classes = 0;
  bool tail_vanishes = false;
};

CohomologyReport hochschild_cohomology(const AStructure& a, int hh_degree,
                                       const WeightWindow& win);

/// A degree-0 family of the graded center: one H^0(X, X) class per object,
/// commuting with every class of the graded homotopy category.
struct CenterReport {
  // Class representatives of H^0(X, X) per object, concatenated; families
  // are coordinate vectors over these.
  std::vector<std::pair<ObjId, TermList>> h0_basis;
  std::vector<QVector> center_basis;
  // Object components linked by nonzero H^*(X, Y); their unit families are
  // orthogonal central idempotents.
  std::vector<std::vector<ObjId>> idempotent_components;
  bool center_spanned_by_idempotents = false;
  std::vector<QVector> pi0_image;  // images of HH^0 classes in center coords
  bool units_in_image = false;     // units of Z^0 lie in the image of Pi^0
  bool window_complete = false;    // HH^0 was scanned up to a certified tail
};

CenterReport graded_center(const AStructure& a, const WeightWindow& win);

struct CharacteristicResult {
  std::vector<QVector> class_images;  // center coordinates per input class
  bool graded_split_holds = false;    // strict sections recover each center element
};

/// Projection of verified degree-0 Hochschild classes (complex degree -1)
/// onto the center; updates the report's Pi^0 image and units flag. For
/// formal (graded) inputs also verifies the strict splitting.
CharacteristicResult characteristic_morphism(const AStructure& a,
                                             const std::vector<Cochain>& classes,
                                             CenterReport& report, const WeightWindow& win);

struct InducedMapReport {
  QMatrix matrix;  // columns: parent representatives, rows: subgraph classes
  bool injective = false;
  bool surjective = false;
};

/// Pushes parent representatives through the restriction and expresses them
/// in the subcategory's cohomology basis.
InducedMapReport induced_map_on_HH(const AStructure& parent, const RestrictionIndex& idx,
                                   const AStructure& sub, const CohomologyReport& parent_report,
                                   const CohomologyReport& sub_report, const WeightWindow& win);

/// exp of a verified degree-0, weight >= 2 cocycle as an isotopy.
Isotopy integrate_class(const AStructure& a, const Cochain& v, const WeightWindow& win);

}  // namespace prelie
