#include "qpcert/form_class.hpp"

#include <algorithm>
#include <cmath>

#include "qpcert/constants.hpp"
#include "qpcert/eig.hpp"

namespace qpcert {

FormClass classify_form(const Operator& t, const SpaceDesc& space) {
  FormClass c;
  c.tail = t.tail;
  if (t.head_dim() > 0) c.spectrum_head = eig_sym(t.block).values;

  const double block_min = c.spectrum_head.empty() ? 0.0 : c.spectrum_head.front();
  const bool block_psd =
      c.spectrum_head.empty() ||
      block_min >= -kPsdTol * std::max(1.0, fro_norm(t.block));

  if (space.is_finite()) {
    c.psd = block_psd;
    c.weakly_lsc = true;
    c.weakly_continuous = true;
    c.legendre = true;
    c.compact = true;
    c.compact_closed_range = true;
    return c;
  }

  c.psd = block_psd && t.tail >= 0.0;
  c.compact = t.tail == 0.0;
  c.compact_closed_range = t.tail == 0.0;  // zero tail => finite rank
  c.weakly_continuous = t.tail == 0.0;
  c.legendre = t.tail > 0.0;
  c.weakly_lsc = t.tail >= 0.0;
  return c;
}

bool borderline_tail(const FormClass& c) {
  return c.tail > 0.0 && c.tail < 1e-12;
}

}  // namespace qpcert
