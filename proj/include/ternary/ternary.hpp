#pragma once

// Umbrella header.

#include <ternary/aggregate.hpp>
#include <ternary/alpha.hpp>
#include <ternary/checkpoint.hpp>
#include <ternary/error.hpp>
#include <ternary/ratio.hpp>
#include <ternary/reports.hpp>
#include <ternary/stats.hpp>
#include <ternary/sweep.hpp>
#include <ternary/table.hpp>
#include <ternary/ternary_number.hpp>
#include <ternary/theory.hpp>
