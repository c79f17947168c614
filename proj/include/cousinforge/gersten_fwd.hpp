#pragma once

namespace cousinforge {

// There is no universal sign convention for the Cousin boundary; the
// global knob records the choice instead of hard-coding it.
enum class BoundarySign { plus, minus };

} // namespace cousinforge
