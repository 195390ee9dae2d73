#pragma once

#include "fuzzproc/algebra.hpp"
#include "fuzzproc/engine.hpp"
#include "fuzzproc/error.hpp"
#include "fuzzproc/grade.hpp"
#include "fuzzproc/laws.hpp"
#include "fuzzproc/process.hpp"
#include "fuzzproc/proclang.hpp"
#include "fuzzproc/universe.hpp"
