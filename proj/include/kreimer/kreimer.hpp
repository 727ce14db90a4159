#pragma once

#include "kreimer/coefficient.hpp"
#include "kreimer/errors.hpp"
#include "kreimer/forest.hpp"
#include "kreimer/gram.hpp"
#include "kreimer/linalg.hpp"
#include "kreimer/oracle.hpp"
#include "kreimer/pairing.hpp"
#include "kreimer/pipoly.hpp"
#include "kreimer/projector.hpp"
#include "kreimer/rational.hpp"
#include "kreimer/renorm.hpp"
#include "kreimer/series.hpp"
#include "kreimer/text_format.hpp"
#include "kreimer/universal.hpp"
