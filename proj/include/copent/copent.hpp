#pragma once

#include "copent/copula.hpp"
#include "copent/entropy.hpp"
#include "copent/error.hpp"
#include "copent/independence.hpp"
#include "copent/io.hpp"
#include "copent/knn.hpp"
#include "copent/pipelines.hpp"
#include "copent/report.hpp"
#include "copent/special.hpp"
#include "copent/types.hpp"
