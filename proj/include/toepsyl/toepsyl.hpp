#pragma once

#include "error.hpp"
#include "numeric.hpp"
#include "matrix.hpp"
#include "toeplitz.hpp"
#include "lu.hpp"
#include "oracle.hpp"
#include "builders.hpp"
#include "kernel.hpp"
#include "verify.hpp"
#include "random.hpp"
#include "io.hpp"
#include "commands.hpp"
