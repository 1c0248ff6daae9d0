#pragma once

#include "chshq/bounds.hpp"
#include "chshq/construction.hpp"
#include "chshq/errors.hpp"
#include "chshq/finite_field.hpp"
#include "chshq/game.hpp"
#include "chshq/incidence.hpp"
#include "chshq/io.hpp"
#include "chshq/oracle.hpp"
#include "chshq/rational.hpp"
#include "chshq/report.hpp"
