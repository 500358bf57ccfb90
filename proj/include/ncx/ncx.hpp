#pragma once

#include "ncx/exactla.hpp"
#include "ncx/modcat.hpp"
#include "ncx/complex.hpp"
#include "ncx/homotopy.hpp"
#include "ncx/resolve.hpp"
#include "ncx/derived.hpp"
#include "ncx/io.hpp"
