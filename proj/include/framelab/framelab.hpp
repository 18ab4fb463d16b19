#pragma once

#include "framelab/gf.hpp"
#include "framelab/mat.hpp"
#include "framelab/subspace.hpp"
#include "framelab/projective.hpp"
#include "framelab/rmatroid.hpp"
#include "framelab/isomorphism.hpp"
#include "framelab/certificates.hpp"
#include "framelab/frames.hpp"
#include "framelab/frame_lemmas.hpp"
#include "framelab/templates.hpp"
#include "framelab/template_reduce.hpp"
#include "framelab/template_enum.hpp"
#include "framelab/search.hpp"
#include "framelab/json_io.hpp"
