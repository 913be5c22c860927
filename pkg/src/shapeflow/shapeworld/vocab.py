"""Word-level tokenizer over the closed caption/instruction grammar."""

from __future__ import annotations

from .caption import NUMBER_WORDS, PLURALS, PREFIXES
from .palette import COLORS, SHAPES


class VocabularyError(ValueError):
    pass


SPECIALS = ("<pad>", "<bos>", "<eos>", "<img>", "</img>", "<null>")

_GRAMMAR_WORDS = sorted(
    set(w for p in PREFIXES for w in p.split())
    | {"a", "an", "the", "and", "of", "to", "on", "with"}
    | {"left", "right", "above", "below"}
    | set(NUMBER_WORDS.values())
    | set(COLORS)
    | set(SHAPES)
    | set(PLURALS.values())
    | {"recolor", "remove", "add", "change", "background"}
)


class Vocabulary:
    """Bijective word <-> id map plus reserved special ids."""

    def __init__(self, words=tuple(_GRAMMAR_WORDS)):
        self.specials = SPECIALS
        self.words = tuple(words)
        self._id_of = {w: i + len(SPECIALS) for i, w in enumerate(self.words)}
        self.pad, self.bos, self.eos, self.img_start, self.img_end, self.null = (
            range(len(SPECIALS)))

    def __len__(self) -> int:
        return len(SPECIALS) + len(self.words)

    def tokenize(self, text: str) -> list[int]:
        ids = []
        for word in text.split():
            if word not in self._id_of:
                raise VocabularyError(f"out-of-vocabulary word: {word!r}")
            ids.append(self._id_of[word])
        return ids

    def detokenize(self, ids) -> str:
        words = []
        for i in ids:
            i = int(i)
            if not 0 <= i < len(self):
                raise VocabularyError(f"token id {i} outside vocabulary")
            if i < len(SPECIALS):
                words.append(SPECIALS[i])
            else:
                words.append(self.words[i - len(SPECIALS)])
        return " ".join(words)


def build_vocabulary() -> Vocabulary:
    return Vocabulary()
