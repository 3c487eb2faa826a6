#pragma once

// Umbrella header: the whole library in one include.

#include "adaptkw/adapter.hpp"
#include "adaptkw/adapter_io.hpp"
#include "adaptkw/candidates.hpp"
#include "adaptkw/corpus.hpp"
#include "adaptkw/embedding.hpp"
#include "adaptkw/errors.hpp"
#include "adaptkw/evaluate.hpp"
#include "adaptkw/hash_embedder.hpp"
#include "adaptkw/http_embedder.hpp"
#include "adaptkw/matrix.hpp"
#include "adaptkw/pipeline.hpp"
#include "adaptkw/ranker.hpp"
#include "adaptkw/store_embedder.hpp"
#include "adaptkw/text.hpp"
#include "adaptkw/trainer.hpp"
#include "adaptkw/unicode.hpp"
#include "adaptkw/zeroshot.hpp"
