#pragma once

#include <ostream>

#include "ido/ode.hpp"

namespace ido {

/// Self-contained SVG: one panel per state channel (estimate over reference),
/// one per error channel, plus the input and any extras. For human inspection
/// only; nothing parses these back.
void write_trace_svg(std::ostream& out, const StateTrace& trace);

}  // namespace ido
