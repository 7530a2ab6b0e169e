#ifndef HA2KIT_HA2KIT_HPP
#define HA2KIT_HA2KIT_HPP

// umbrella header

#include "ha2kit/algebroid1.hpp"
#include "ha2kit/chart.hpp"
#include "ha2kit/ha2.hpp"
#include "ha2kit/parse.hpp"
#include "ha2kit/point_ha.hpp"
#include "ha2kit/poly.hpp"
#include "ha2kit/prolong.hpp"
#include "ha2kit/random.hpp"
#include "ha2kit/rational.hpp"
#include "ha2kit/report.hpp"
#include "ha2kit/ruth2.hpp"
#include "ha2kit/specfile.hpp"
#include "ha2kit/structure_maps.hpp"

#endif
