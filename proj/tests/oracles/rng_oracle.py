M = (1 << 64) - 1
def rotl(x, k): return ((x << k) | (x >> (64 - k))) & M
def splitmix(state):
    state = (state + 0x9E3779B97F4A7C15) & M
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & M
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & M
    return state, z ^ (z >> 31)
class Xo:
    def __init__(self, s): self.s = list(s)
    def next(self):
        s = self.s
        r = (rotl((s[1] * 5) & M, 7) * 9) & M
        t = (s[1] << 17) & M
        s[2] ^= s[0]; s[3] ^= s[1]; s[1] ^= s[2]; s[0] ^= s[3]; s[2] ^= t; s[3] = rotl(s[3], 45)
        return r
# validate against published reference vectors
x = Xo([1, 2, 3, 4]); assert [x.next() for _ in range(4)] == [11520, 0, 1509978240, 1215971899390074240]
st = 1234567; out = []
for _ in range(5):
    st, z = splitmix(st); out.append(z)
assert out == [6457827717110365317, 3203168211198807973, 9817491932198370423, 4593380528125082431, 16408922859458223821]
def source(seed, stream):
    x = seed; x, a = splitmix(x); x = a ^ ((stream * 0xD1B54A32D192ED03) & M)
    words = []
    for _ in range(4):
        x, w = splitmix(x); words.append(w)
    return Xo(words)
def for_trial(seed, stream, i):
    x = seed ^ rotl(stream, 32); _, s = splitmix(x); return s, i
r = source(42, 0); print("seed42", [r.next() for _ in range(10)])
s, i = for_trial(42, 0, 3); r = source(s, i); print("trial3", [r.next() for _ in range(3)])
r = source(42, 7); print("stream7", [r.next() for _ in range(3)])
r = source(42, 0); print("uniform", [repr((r.next() >> 11) * 2.0**-53) for _ in range(3)])
