# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Malayalam syllable-subword tokenization for open-vocabulary ASR.

Rule-based syllabification with '+' join markers, pronunciation lexicon
construction, backoff n-gram language models (ARPA), and OOV/WER
evaluation utilities.
"""

from mlsyl._core import (
    MeanLengthReport,
    MlsylError,
    NgramModel,
    OovReport,
    PerplexityReport,
    WerReport,
    build_word_lexicon,
    dedup,
    derive_syllable_lexicon,
    detokenize,
    frequency_profile,
    grapheme_to_phonemes,
    load_arpa,
    mean_word_length,
    normalize,
    oov_rate,
    score,
    simulate_errors,
    syllabify,
    tokenize_sentence,
    tokenize_word,
    train_model,
    verify_consistency,
)

__all__ = [
    "MeanLengthReport",
    "MlsylError",
    "NgramModel",
    "OovReport",
    "PerplexityReport",
    "WerReport",
    "build_word_lexicon",
    "dedup",
    "derive_syllable_lexicon",
    "detokenize",
    "frequency_profile",
    "grapheme_to_phonemes",
    "load_arpa",
    "mean_word_length",
    "normalize",
    "oov_rate",
    "score",
    "simulate_errors",
    "syllabify",
    "tokenize_sentence",
    "tokenize_word",
    "train_model",
    "verify_consistency",
]
