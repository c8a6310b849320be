#pragma once

#include <optional>
#include <string>

#include "kzmc/tournament.hpp"

namespace kzmc {

enum class RenderFormat { ascii, tex };

// Bracket chart of a family. Leaves are laid out by depth-first traversal
// with the part containing the smaller label first. With a winner, the
// losing side of every game is drawn with a gap next to the junction, as
// given by LoserMap::canonical. The TeX form is a complete document using
// only the picture environment.
std::string render_family(const MaximalCommutingFamily& family, std::optional<unsigned> winner, RenderFormat format);

}  // namespace kzmc
