#pragma once

#include "analysis.hpp"
#include "dag.hpp"
#include "errors.hpp"
#include "extensions.hpp"
#include "generate.hpp"
#include "io.hpp"
#include "oracle.hpp"
#include "pairing_heap.hpp"
#include "sorter.hpp"
