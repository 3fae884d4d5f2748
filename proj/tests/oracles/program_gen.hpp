#pragma once

#include <random>
#include <string>

namespace oracle {

/// Random halting program in assembly text. Code starts at 0, data lives
/// at 0xe0..0xff. Branches are forward only, except bounded countdown loops
/// (DCRA; JOZ out; JOC back) whose back edge is taken while the counter is
/// nonzero.
std::string random_program(std::mt19937_64& rng, int max_instructions = 24);

}  // namespace oracle
