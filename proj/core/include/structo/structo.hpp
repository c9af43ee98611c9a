#pragma once

// Everything at once, for tools and quick experiments.
#include "structo/combinat.hpp"
#include "structo/constructions.hpp"
#include "structo/eqrel.hpp"
#include "structo/error.hpp"
#include "structo/factorize.hpp"
#include "structo/fiber.hpp"
#include "structo/io.hpp"
#include "structo/lattice.hpp"
#include "structo/logic.hpp"
#include "structo/scott.hpp"
#include "structo/structures.hpp"
#include "structo/theoryalg.hpp"
#include "structo/util.hpp"
#include "structo/verify.hpp"
