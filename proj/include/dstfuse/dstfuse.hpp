#pragma once

#include "dstfuse/error.hpp"
#include "dstfuse/frame.hpp"
#include "dstfuse/mass.hpp"
#include "dstfuse/compact_mass.hpp"
#include "dstfuse/evidence.hpp"
#include "dstfuse/decision.hpp"
#include "dstfuse/io.hpp"
#include "dstfuse/pipeline.hpp"
#include "dstfuse/report.hpp"
#include "dstfuse/fixture.hpp"
