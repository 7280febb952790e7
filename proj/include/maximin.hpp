#pragma once

// Convenience header pulling in the whole library.

#include "maximin/error.hpp"
#include "maximin/geometry.hpp"
#include "maximin/predicates.hpp"
#include "maximin/apollonius.hpp"
#include "maximin/mesh.hpp"
#include "maximin/objective.hpp"
#include "maximin/instances.hpp"
#include "maximin/solvers.hpp"
#include "maximin/report.hpp"
#include "maximin/svg.hpp"
