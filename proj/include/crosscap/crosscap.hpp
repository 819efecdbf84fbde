#pragma once

#include "crosscap/config.hpp"
#include "crosscap/developable.hpp"
#include "crosscap/fixtures.hpp"
#include "crosscap/frame.hpp"
#include "crosscap/invariants.hpp"
#include "crosscap/mesh.hpp"
#include "crosscap/model.hpp"
#include "crosscap/rational.hpp"
#include "crosscap/report.hpp"
#include "crosscap/series.hpp"
#include "crosscap/verify.hpp"
