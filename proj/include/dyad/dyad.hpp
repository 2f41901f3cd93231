#pragma once

#include "dyad/blocks.hpp"
#include "dyad/ccghc.hpp"
#include "dyad/codes.hpp"
#include "dyad/error.hpp"
#include "dyad/exact.hpp"
#include "dyad/ghc.hpp"
#include "dyad/io.hpp"
#include "dyad/pipeline.hpp"
#include "dyad/pmf.hpp"
#include "dyad/simplex.hpp"
