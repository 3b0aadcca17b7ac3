"""Reduced words in free groups, commutators, and Lyndon/Witt counting.

A letter is a nonzero signed integer: +i is the i-th generator, -i its
inverse (indices start at 1).  Words are always freely reduced.  The CLI
literal syntax is whitespace-separated ``x1 X1 x2`` with capitals meaning
inverses.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Word:
    ngens: int
    letters: tuple[int, ...]

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return word_str(self)


def free_reduce(raw, ngens: int) -> Word:
    """Cancel adjacent inverse pairs; idempotent."""
    stack: list[int] = []
    for x in raw:
        x = int(x)
        if x == 0 or abs(x) > ngens:
            raise ValueError(f"letter {x} out of range for {ngens} generators")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return Word(ngens, tuple(stack))


def word_mul(a: Word, b: Word) -> Word:
    if a.ngens != b.ngens:
        raise ValueError("generator count mismatch")
    return free_reduce(a.letters + b.letters, a.ngens)


def word_inv(a: Word) -> Word:
    return Word(a.ngens, tuple(-x for x in reversed(a.letters)))


def word_pow(a: Word, k: int) -> Word:
    if k < 0:
        return word_pow(word_inv(a), -k)
    out = Word(a.ngens, ())
    for _ in range(k):
        out = word_mul(out, a)
    return out


def word_commutator(a: Word, b: Word) -> Word:
    """[a, b] = a^-1 b^-1 a b."""
    return word_mul(word_mul(word_inv(a), word_inv(b)), word_mul(a, b))


def generator(ngens: int, i: int) -> Word:
    return free_reduce([i], ngens)


def parse_word(text: str, ngens: int) -> Word:
    """Parse the literal syntax: ``x1 X2 x1`` (capital = inverse)."""
    letters = []
    for tok in text.split():
        if len(tok) < 2 or tok[0] not in "xX" or not tok[1:].isdigit():
            raise ValueError(f"bad word token {tok!r} (expected x<k> or X<k>)")
        i = int(tok[1:])
        letters.append(i if tok[0] == "x" else -i)
    return free_reduce(letters, ngens)


def word_str(w: Word) -> str:
    if not w.letters:
        return "1"
    return " ".join(f"x{x}" if x > 0 else f"X{-x}" for x in w.letters)


def mobius(n: int) -> int:
    """Moebius function by trial factorization (n stays small here)."""
    if n < 1:
        raise ValueError("mobius needs n >= 1")
    out = 1
    d = 2
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                return 0
            out = -out
        d += 1
    if n > 1:
        out = -out
    return out


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def witt_rank(n: int, d: int) -> int:
    """Rank of the degree-d part of the free Lie ring on n generators:
    (1/d) * sum_{e|d} mu(e) n^(d/e).  Counts Lyndon words of length d."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    total = sum(mobius(e) * n ** (d // e) for e in divisors(d))
    assert total % d == 0
    return total // d


def lyndon_words(n: int, d: int) -> list[tuple[int, ...]]:
    """All length-d Lyndon words over 1..n by brute rotation test, in
    lexicographic order.  Deliberately naive: this is the independent
    counting oracle for witt_rank."""
    if n < 1 or d < 1:
        raise ValueError("need n >= 1 and d >= 1")
    out = []
    word = [1] * d
    while True:
        w = tuple(word)
        if all(w < w[k:] + w[:k] for k in range(1, d)):
            out.append(w)
        # next word in lexicographic order
        i = d - 1
        while i >= 0 and word[i] == n:
            word[i] = 1
            i -= 1
        if i < 0:
            break
        word[i] += 1
    return out
