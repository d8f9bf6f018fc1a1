#pragma once

#include <string>

#include "cdplus/body.hpp"
#include "cdplus/scene.hpp"

namespace cdp {

/// Deterministic side-view rendering of a scene: ground line, body outlines
/// with their ids, dents, markers. Same input, same bytes.
std::string scene_svg(const Scene& s);

/// Scene plus a posed figure.
std::string scene_svg(const Scene& s, const BodyModel& person);

} // namespace cdp
