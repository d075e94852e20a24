#pragma once

#include <vector>

#include "qpcert/operator.hpp"
#include "qpcert/space.hpp"

namespace qpcert {

/// Topological classification of the quadratic form <x, T x>.
///
/// In a finite-dimensional space every continuous form is a Legendre form
/// and every operator is compact with closed range, so everything except
/// psd is immediate. In the sequence space the block-plus-scalar-tail shape
/// decides each property from the tail sign: the form splits as
/// tail*||x||^2 plus a finite-rank (hence weakly continuous) part.
struct FormClass {
  bool psd = false;
  bool weakly_lsc = false;
  bool weakly_continuous = false;
  bool legendre = false;
  bool compact = false;
  bool compact_closed_range = false;
  std::vector<double> spectrum_head;  // block eigenvalues, ascending
  double tail = 0.0;
};

FormClass classify_form(const Operator& t, const SpaceDesc& space);

/// 0 < tail < 1e-12: the tail-sign rule classifies by the literal sign with
/// no tolerance; reports flag such inputs.
bool borderline_tail(const FormClass& c);

}  // namespace qpcert
