#pragma once

#include "stacksort/word.hpp"
#include "stacksort/stack_sort.hpp"
#include "stacksort/rank.hpp"
#include "stacksort/pattern.hpp"
#include "stacksort/catalog.hpp"
#include "stacksort/forbidden.hpp"
#include "stacksort/formula.hpp"
#include "stacksort/census.hpp"
#include "stacksort/census_io.hpp"
#include "stacksort/run_census.hpp"
