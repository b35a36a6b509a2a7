#pragma once

#include "lrsz/bigint.hpp"
#include "lrsz/experiments.hpp"
#include "lrsz/factor.hpp"
#include "lrsz/lrs.hpp"
#include "lrsz/padic.hpp"
#include "lrsz/polynomial.hpp"
#include "lrsz/real.hpp"
#include "lrsz/serialize.hpp"
#include "lrsz/skolem.hpp"
#include "lrsz/tribonacci.hpp"
