#pragma once

#include "pallen/base_positions.hpp"
#include "pallen/covering_palindromes.hpp"
#include "pallen/generators.hpp"
#include "pallen/io.hpp"
#include "pallen/nps.hpp"
#include "pallen/palindrome_table.hpp"
#include "pallen/palindromics.hpp"
#include "pallen/periodicity.hpp"
#include "pallen/pl_engine.hpp"
#include "pallen/verifier.hpp"
#include "pallen/word.hpp"
