#pragma once

// Umbrella header: tf-idf/cosine retrieval over a term space plus validated
// matrix group actions and dual-space representations on the same vectors.

#include "gvsm/dual.hpp"
#include "gvsm/errors.hpp"
#include "gvsm/groups.hpp"
#include "gvsm/io.hpp"
#include "gvsm/linalg.hpp"
#include "gvsm/matrix.hpp"
#include "gvsm/vsm.hpp"
