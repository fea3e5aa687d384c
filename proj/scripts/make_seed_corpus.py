#!/usr/bin/env python3
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

"""Regenerates the synthetic Malayalam seed corpora under data/.

The seed corpora back the test suites: a Zipf-distributed LM text corpus,
train transcripts whose unique words form the base lexicon, and a test set
whose words are built only from syllables the train set covers, so the
derived syllable lexicon reaches full test coverage while a large share of
test word tokens stay out of the base word lexicon.

Deterministic: a fixed RNG seed reproduces the files byte for byte.
"""

import collections
import random
from pathlib import Path

SEED = 20260814
DATA_DIR = Path(__file__).resolve().parent.parent / "data"

VIRAMA = "്"
ANUSWARA = "ം"

# Frequent Malayalam letters only; everything here is covered by the default
# character and phone tables.
CONSONANTS = list("കഖഗങചഞടണതദനപബമയരലവശഷസഹളറ")
SIGNS = ["", "ാ", "ി", "ു", "െ", "ോ"]  # - ാ ി ു െ ോ
INITIAL_VOWELS = list("അഇഉഎഓ")
CHILLUS = ["ൻ", "ർ", "ൾ"]  # ൻ ർ ൾ
GEMINATE_BASES = list("കങചടണതനപമയലള")

WORD_TYPES = 12500
TRAIN_VOCAB = 2800
TEST_SENTENCES = 60
TEST_WORDS_PER_SENTENCE = 8
TEST_OOV_SHARE = 0.45
PLANTED_TEST_LINES = 40


def build_syllable_pools(rng):
    """Medial pool (valid anywhere), initial-only vowels, final-only units."""
    medial = []
    for c in CONSONANTS[:15]:
        for s in SIGNS[:5]:
            medial.append(c + s)
    specials = CHILLUS + [ANUSWARA]
    for c in rng.sample(CONSONANTS[:15], 10):
        medial.append(c + rng.choice(SIGNS[:3]) + rng.choice(specials))
    for g in GEMINATE_BASES:
        cluster = g + VIRAMA + g
        for s in ["", "ി"]:
            medial.append(cluster + s)
    initials = list(INITIAL_VOWELS) + ["അ" + ANUSWARA, "എ" + CHILLUS[0]]
    finals = [c + VIRAMA for c in "കതപശ"]
    # Two syllables per frequency threshold that occur nowhere else, so each
    # widening of the word lexicon adds new syllable entries too. They stay
    # out of the train and test vocabularies.
    rare = {5: ["ര", "രാ"], 4: ["ല", "ലി"], 3: ["വ", "വു"]}
    return medial, initials, finals, rare


def make_word(rng, medial, initials, finals):
    n = rng.choices([1, 2, 3, 4, 5], weights=[4, 22, 42, 22, 10])[0]
    if n == 1:
        return (rng.choice(medial),)
    first = rng.choice(initials) if rng.random() < 0.15 else rng.choice(medial)
    body = [rng.choice(medial) for _ in range(n - 2)]
    last = rng.choice(finals) if rng.random() < 0.08 else rng.choice(medial)
    return tuple([first] + body + [last])


def syllable_tokens(syllables):
    """Marker-annotated tokens the tokenizer derives for this word."""
    return [s + "+" for s in syllables[:-1]] + [syllables[-1]]


def pack_lines(rng, tokens, low, high):
    lines = []
    i = 0
    while i < len(tokens):
        n = rng.randint(low, high)
        lines.append(" ".join(tokens[i:i + n]))
        i += n
    return [l for l in lines if l]


def main():
    rng = random.Random(SEED)
    medial, initials, finals, rare = build_syllable_pools(rng)

    # Coverage words guarantee that every pool unit occurs in the train
    # vocabulary in every position it can occupy in a test word.
    words = {}

    def add_word(syllables):
        w = "".join(syllables)
        if w not in words:
            words[w] = tuple(syllables)
        return w

    coverage = []
    for s in medial:
        coverage.append(add_word((s, rng.choice(medial))))
        coverage.append(add_word((rng.choice(medial), s)))
    for v in initials:
        coverage.append(add_word((v, rng.choice(medial))))
    for f in finals:
        coverage.append(add_word((rng.choice(medial), f)))
    coverage = sorted(set(coverage))

    rare_words = {}
    for min_count, syllables in sorted(rare.items()):
        for s in syllables:
            rare_words[add_word((s, rng.choice(medial)))] = min_count
            rare_words[add_word((rng.choice(medial), s))] = min_count

    while len(words) < WORD_TYPES:
        add_word(make_word(rng, medial, initials, finals))
    all_words = sorted(words)

    excluded = set(coverage) | set(rare_words)
    non_coverage = [w for w in all_words if w not in excluded]
    train_vocab = coverage + rng.sample(non_coverage, TRAIN_VOCAB - len(coverage))
    train_set = set(train_vocab)

    # Zipf-like count classes over every word type. The exact class sizes
    # keep each frequency threshold strictly widening.
    shuffled = list(all_words)
    rng.shuffle(shuffled)
    counts = {}
    for rank, w in enumerate(shuffled):
        if rank < 300:
            counts[w] = max(6, 1200 // (rank + 1))
        elif rank < 2300:
            counts[w] = 5
        elif rank < 3700:
            counts[w] = 4
        elif rank < 5200:
            counts[w] = 3
        elif rank < 7500:
            counts[w] = 2
        else:
            counts[w] = 1
    counts.update(rare_words)

    corpus_tokens = []
    for w in all_words:
        corpus_tokens.extend([w] * counts[w])
    rng.shuffle(corpus_tokens)
    corpus_lines = pack_lines(rng, corpus_tokens, 5, 11)

    train_tokens = list(train_vocab) + rng.choices(train_vocab, k=1200)
    rng.shuffle(train_tokens)
    train_lines = pack_lines(rng, train_tokens, 6, 10)

    oov_pool = [w for w in all_words
                if w not in train_set and w not in rare_words]
    test_lines = []
    test_tokens = []
    for _ in range(TEST_SENTENCES):
        sentence = []
        for _ in range(TEST_WORDS_PER_SENTENCE):
            if rng.random() < TEST_OOV_SHARE:
                sentence.append(rng.choice(oov_pool))
            else:
                sentence.append(rng.choice(train_vocab))
        test_lines.append(" ".join(sentence))
        test_tokens.extend(sentence)

    # Some test sentences appear verbatim in the raw LM corpus, so corpus
    # preparation has real duplicates to strip.
    planted = rng.sample(test_lines, PLANTED_TEST_LINES)
    lm_lines = corpus_lines + planted
    rng.shuffle(lm_lines)

    # --- self checks -------------------------------------------------------
    oov_tokens = sum(1 for w in test_tokens if w not in train_set)
    oov_rate = oov_tokens / len(test_tokens)
    assert 0.35 <= oov_rate <= 0.55, oov_rate

    train_syllables = set()
    for w in train_vocab:
        train_syllables.update(syllable_tokens(words[w]))
    missing = set()
    for w in test_tokens:
        missing.update(t for t in syllable_tokens(words[w])
                       if t not in train_syllables)
    assert not missing, sorted(missing)[:10]

    by_count = collections.Counter(counts.values())
    for needed in (3, 4, 5):
        assert by_count[needed] > 0

    planted_set = set(planted)
    assert sum(1 for l in corpus_lines if l in planted_set) == 0

    # --- write -------------------------------------------------------------
    (DATA_DIR / "seed_lm_corpus.txt").write_text(
        "\n".join(lm_lines) + "\n", encoding="utf-8")
    (DATA_DIR / "seed_train_transcripts.txt").write_text(
        "\n".join(train_lines) + "\n", encoding="utf-8")
    (DATA_DIR / "seed_test.txt").write_text(
        "\n".join(test_lines) + "\n", encoding="utf-8")

    mean_len = sum(len(words[w]) for w in corpus_tokens) / len(corpus_tokens)
    print(f"word types        {len(all_words)}")
    print(f"corpus tokens     {len(corpus_tokens)}")
    print(f"corpus lines      {len(lm_lines)} ({PLANTED_TEST_LINES} planted)")
    print(f"train vocab       {len(train_vocab)}")
    print(f"train lines       {len(train_lines)}")
    print(f"test lines        {len(test_lines)}")
    print(f"test token oov    {oov_rate:.3f}")
    print(f"syllable pool     {len(medial) + len(initials) + len(finals)}")
    print(f"mean word length  {mean_len:.2f} syllables")


if __name__ == "__main__":
    main()
