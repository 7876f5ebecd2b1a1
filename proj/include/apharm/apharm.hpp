#pragma once

#include "apharm/bohr.hpp"
#include "apharm/characters.hpp"
#include "apharm/error.hpp"
#include "apharm/group.hpp"
#include "apharm/json_io.hpp"
#include "apharm/linalg.hpp"
#include "apharm/peterweyl.hpp"
#include "apharm/rational.hpp"
#include "apharm/trigpoly.hpp"
