#pragma once

#include "ballcollar/certify.hpp"
#include "ballcollar/geometry.hpp"
#include "ballcollar/group.hpp"
#include "ballcollar/isometry.hpp"
#include "ballcollar/spec_io.hpp"
#include "ballcollar/svg.hpp"
#include "ballcollar/vec.hpp"
