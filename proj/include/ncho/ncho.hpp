#pragma once

#include "ncho/error.hpp"
#include "ncho/params.hpp"
#include "ncho/banded_matrix.hpp"
#include "ncho/operator.hpp"
#include "ncho/eigensolve.hpp"
#include "ncho/certificates.hpp"
#include "ncho/closedform.hpp"
#include "ncho/diagnostics.hpp"
#include "ncho/io.hpp"
