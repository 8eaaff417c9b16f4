#pragma once

#include "cdyn/circle.hpp"
#include "cdyn/complexity.hpp"
#include "cdyn/cover.hpp"
#include "cdyn/errors.hpp"
#include "cdyn/fit.hpp"
#include "cdyn/horseshoe.hpp"
#include "cdyn/independence.hpp"
#include "cdyn/lifting.hpp"
#include "cdyn/mapfile.hpp"
#include "cdyn/models.hpp"
#include "cdyn/omega.hpp"
#include "cdyn/periodic.hpp"
#include "cdyn/rational.hpp"
#include "cdyn/rotation.hpp"
#include "cdyn/sharkovsky.hpp"
