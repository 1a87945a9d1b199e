"""Hot numeric kernels (numba). Internal module — no public API stability.

Everything here is uint64 arithmetic with a floating-point-reciprocal
mulmod:  q = trunc(x*y*(1/m));  r = x*y - q*m  in wrapped uint64, then a
fixed number of masked corrections.  For m <= 2**53 + 2 the truncated
quotient is within 4 of the true one (|fl(x*y*(1/m)) - x*y/m| <=
3*(x*y/m)*2**-53 < 3.01 plus truncation), so four +m and four -m rounds
restore the exact remainder.  Loops are laid out with the bit-position
loop OUTER and the element loop INNER so LLVM vectorizes the element
loop (AVX-512 on the reference host: ~1 ns per modmul lane).

Divisor counts over a box use a column sieve: for fixed a, the l with
p | 4*l*a*a + 1 form one arithmetic progression mod p (root found by a
vectorized Fermat inverse over the whole prime table), and exact
quotients are taken with per-prime multiplicative inverses mod 2**64
(q = c * pinv; p divides c iff q <= floor((2**64-1)/p)).

Leftover cofactors after sieving to B = floor(max_n**(1/3)) are 1, p,
p*p, or p*q with p, q prime > B (three factors would exceed
(B+1)**3 > max_n).  Classification: r <= B*B => prime; perfect square
=> p*p (p*p*q*q > B**4 > max_n is impossible); otherwise a base-2
strong probable-prime test, and survivors get a strong Lucas test with
the standard parameter walk (D = 5, -7, 9, -11, ...).  Both passing
certifies primality for n < 2**64 per the exhaustively verified
combined-test result; our n never exceed 2**53 + 1.
"""

from __future__ import annotations

import numpy as np
from numba import njit

U64 = np.uint64
ZERO = np.uint64(0)
ONE = np.uint64(1)
TWO = np.uint64(2)
SIGN_BIT = np.uint64(0x8000000000000000)
U64_MAX = np.uint64(0xFFFFFFFFFFFFFFFF)
PC_BIG = np.uint32(0xFFFFFFFF)  # sentinel: least prime of c exceeds every threshold


# --------------------------------------------------------------------------
# linear sieve: least prime factor, divisor count, totient, prime list
# --------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def lpf_linear_sieve(limit, want_phi):
    """Linear sieve up to `limit` inclusive; phi table empty unless requested."""
    lpf = np.zeros(limit + 1, np.uint32)
    dcnt = np.zeros(limit + 1, np.int32)
    if want_phi:
        phi = np.zeros(limit + 1, np.int64)
        phi[1] = 1
    else:
        phi = np.zeros(1, np.int64)
    cnt = np.zeros(limit + 1, np.uint8)  # exponent of lpf(i) in i
    primes = np.empty(max(16, limit // 2 + 1), np.int64)
    nprimes = 0
    dcnt[1] = 1
    for i in range(2, limit + 1):
        if lpf[i] == 0:
            lpf[i] = i
            dcnt[i] = 2
            cnt[i] = 1
            if want_phi:
                phi[i] = i - 1
            primes[nprimes] = i
            nprimes += 1
        li = lpf[i]
        for t in range(nprimes):
            p = primes[t]
            if p > li:
                break
            ip = i * p
            if ip > limit:
                break
            lpf[ip] = p
            if p == li:
                c = cnt[i] + 1
                cnt[ip] = c
                dcnt[ip] = dcnt[i] // c * (c + 1)
                if want_phi:
                    phi[ip] = phi[i] * p
            else:
                cnt[ip] = 1
                dcnt[ip] = dcnt[i] * 2
                if want_phi:
                    phi[ip] = phi[i] * (p - 1)
    return lpf, dcnt, phi, primes[:nprimes].copy()


# --------------------------------------------------------------------------
# batched primality machinery (inputs odd, > 5, no prime factor <= 43)
# --------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def isqrt_classify(vals, roots, issq):
    """roots[i] = floor(sqrt(vals[i])); issq[i] = 1 iff vals[i] is a square."""
    for i in range(vals.shape[0]):
        v = vals[i]
        s = np.uint64(np.sqrt(np.float64(v)))
        # float sqrt is within 1 for v < 2**54; settle exactly
        if s * s > v:
            s -= ONE
        if (s + ONE) * (s + ONE) <= v:
            s += ONE
        roots[i] = s
        issq[i] = ONE if s * s == v else ZERO


@njit(cache=True, nogil=True)
def base2_strong_batch(nv, flags):
    """flags[i]=1 iff odd nv[i] > 3 is a strong probable prime to base 2."""
    cnt = nv.shape[0]
    x = np.empty(cnt, np.uint64)
    dd = np.empty(cnt, np.uint64)
    ss = np.empty(cnt, np.uint64)
    nm1 = np.empty(cnt, np.uint64)
    ri = np.empty(cnt, np.float64)
    smax = ZERO
    for i in range(cnt):
        n = nv[i]
        m1 = n - ONE
        nm1[i] = m1
        s = ZERO
        while (m1 & ONE) == ZERO:
            m1 >>= ONE
            s += ONE
        dd[i] = m1
        ss[i] = s
        if s > smax:
            smax = s
        ri[i] = 1.0 / np.float64(n)
        x[i] = ONE
    # x <- 2**dd mod n, one squaring plus a masked doubling per bit
    for bit in range(53, -1, -1):
        bb = np.uint64(bit)
        for i in range(cnt):
            m = nv[i]
            xi = x[i]
            f = np.float64(xi)
            q = np.uint64(f * f * ri[i])
            r = xi * xi - q * m
            for _ in range(4):
                if r >= SIGN_BIT:
                    r += m
            for _ in range(4):
                if r >= m:
                    r -= m
            rd = r + r
            if rd >= m:
                rd -= m
            x[i] = rd if ((dd[i] >> bb) & ONE) == ONE else r
    done = np.zeros(cnt, np.uint8)
    for i in range(cnt):
        if x[i] == ONE or x[i] == nm1[i]:
            flags[i] = 1
            done[i] = 1
        else:
            flags[i] = 0
    rnd = ONE
    while rnd < smax:
        for i in range(cnt):
            if done[i] == 0 and rnd < ss[i]:
                m = nv[i]
                xi = x[i]
                f = np.float64(xi)
                q = np.uint64(f * f * ri[i])
                r = xi * xi - q * m
                for _ in range(4):
                    if r >= SIGN_BIT:
                        r += m
                for _ in range(4):
                    if r >= m:
                        r -= m
                x[i] = r
                if r == nm1[i]:
                    flags[i] = 1
                    done[i] = 1
                elif r == ONE:
                    done[i] = 1  # composite: reached 1 without -1
        rnd += ONE


# jacobi(t, m) lookup tables for odd m = 5..23; row m has m entries.
_JACTAB = np.zeros((24, 24), np.int8)


def _fill_jactab():
    def jac(a, m):
        a %= m
        r = 1
        while a:
            while a % 2 == 0:
                a //= 2
                if m % 8 in (3, 5):
                    r = -r
            a, m = m, a
            if a % 4 == 3 and m % 4 == 3:
                r = -r
            a %= m
        return r if m == 1 else 0

    for m in range(3, 24, 2):
        for t in range(m):
            _JACTAB[m, t] = jac(t, m)


_fill_jactab()


@njit(cache=True, nogil=True)
def lucas_strong_batch(nv, flags):
    """Strong Lucas probable-prime flags for odd non-square nv[i] > 5.

    Parameter walk D = 5, -7, 9, -11, ... (first with Jacobi(D, n) = -1),
    P = 1, Q = (1 - D)/4.  Returns the count of elements whose walk
    exceeded |D| = 23 (caller must resolve those separately; with no
    prime factor <= 43 in n the Jacobi symbol never vanishes and the
    expected walk length is < 2).
    """
    cnt = nv.shape[0]
    overflow = 0
    dpar = np.empty(cnt, np.int64)
    for i in range(cnt):
        n = nv[i]
        dval = np.int64(5)
        found = False
        while True:
            ad = np.uint64(dval if dval > 0 else -dval)
            if ad <= np.uint64(23):
                t = np.int64(n % ad)
                j = np.int64(_JACTAB[np.int64(ad), t])
            else:
                # computed binary Jacobi symbol jacobi(|D| mod n ... , n):
                # D = 1 (mod 4), so jacobi(D, n) = jacobi(n mod |D|, |D|)
                a_ = n % ad
                m_ = ad
                j = np.int64(1)
                while a_ != ZERO:
                    while (a_ & ONE) == ZERO:
                        a_ >>= ONE
                        m8 = m_ & np.uint64(7)
                        if m8 == np.uint64(3) or m8 == np.uint64(5):
                            j = -j
                    tmp = a_
                    a_ = m_
                    m_ = tmp
                    if (a_ & np.uint64(3)) == np.uint64(3) and \
                            (m_ & np.uint64(3)) == np.uint64(3):
                        j = -j
                    a_ = a_ % m_
                if m_ != ONE:
                    j = np.int64(0)
            if j == -1:
                found = True
                break
            if ad > np.uint64(1001):
                break  # nonsquare inputs cannot get here; bail loudly
            dval = -(dval + np.int64(2)) if dval > 0 else -(dval - np.int64(2))
        if not found:
            overflow += 1
            flags[i] = 2  # sentinel: unresolved here
            dpar[i] = 0
        else:
            dpar[i] = dval
            flags[i] = 0

    u = np.empty(cnt, np.uint64)
    v = np.empty(cnt, np.uint64)
    qk = np.empty(cnt, np.uint64)
    qres = np.empty(cnt, np.uint64)
    dres = np.empty(cnt, np.uint64)
    dd = np.empty(cnt, np.uint64)
    ss = np.empty(cnt, np.uint64)
    started = np.empty(cnt, np.uint8)
    ri = np.empty(cnt, np.float64)
    smax = ZERO
    for i in range(cnt):
        n = nv[i]
        npl = n + ONE
        s = ZERO
        while (npl & ONE) == ZERO:
            npl >>= ONE
            s += ONE
        dd[i] = npl
        ss[i] = s
        if s > smax:
            smax = s
        dv = dpar[i]
        ni = np.int64(n)
        qv = (np.int64(1) - dv) // np.int64(4)
        qres[i] = np.uint64(qv % ni) if qv >= 0 else n - np.uint64((-qv) % ni)
        dres[i] = np.uint64(dv % ni) if dv >= 0 else n - np.uint64((-dv) % ni)
        u[i] = ONE
        v[i] = ONE
        qk[i] = qres[i]
        started[i] = 0
        ri[i] = 1.0 / np.float64(n)

    # binary ladder over bits of (n+1)/2**s, fully masked:
    # doubling  U<-UV, V<-V*V-2Q^k, Q^k<-Q^2k; set bit additionally steps
    # the index by one: U<-(U+V)/2, V<-(D*U+V)/2, Q^k<-Q^k*Q.
    for bit in range(53, -1, -1):
        bb = np.uint64(bit)
        for i in range(cnt):
            m = nv[i]
            rii = ri[i]
            biti = (dd[i] >> bb) & ONE
            ui = u[i]
            vi = v[i]
            qi = qk[i]

            f1 = np.float64(ui) * np.float64(vi)
            q_ = np.uint64(f1 * rii)
            un = ui * vi - q_ * m
            for _ in range(4):
                if un >= SIGN_BIT:
                    un += m
            for _ in range(4):
                if un >= m:
                    un -= m

            f2 = np.float64(vi) * np.float64(vi)
            q_ = np.uint64(f2 * rii)
            vv = vi * vi - q_ * m
            for _ in range(4):
                if vv >= SIGN_BIT:
                    vv += m
            for _ in range(4):
                if vv >= m:
                    vv -= m

            f3 = np.float64(qi) * np.float64(qi)
            q_ = np.uint64(f3 * rii)
            qn = qi * qi - q_ * m
            for _ in range(4):
                if qn >= SIGN_BIT:
                    qn += m
            for _ in range(4):
                if qn >= m:
                    qn -= m

            t2q = qi + qi
            if t2q >= m:
                t2q -= m
            vn = vv + m - t2q
            if vn >= m:
                vn -= m

            # increment path (used when biti == 1)
            f4 = np.float64(dres[i]) * np.float64(un)
            q_ = np.uint64(f4 * ri[i])
            du = dres[i] * un - q_ * m
            for _ in range(4):
                if du >= SIGN_BIT:
                    du += m
            for _ in range(4):
                if du >= m:
                    du -= m
            suv = un + vn
            if suv >= m:
                suv -= m
            u_inc = (suv + (suv & ONE) * m) >> ONE
            sdv = du + vn
            if sdv >= m:
                sdv -= m
            v_inc = (sdv + (sdv & ONE) * m) >> ONE
            f5 = np.float64(qn) * np.float64(qres[i])
            q_ = np.uint64(f5 * rii)
            q_inc = qn * qres[i] - q_ * m
            for _ in range(4):
                if q_inc >= SIGN_BIT:
                    q_inc += m
            for _ in range(4):
                if q_inc >= m:
                    q_inc -= m

            un2 = u_inc if biti == ONE else un
            vn2 = v_inc if biti == ONE else vn
            qn2 = q_inc if biti == ONE else qn
            st = started[i]
            u[i] = un2 if st == 1 else ui
            v[i] = vn2 if st == 1 else vi
            qk[i] = qn2 if st == 1 else qi
            started[i] = st | np.uint8(biti)

    done = np.zeros(cnt, np.uint8)
    for i in range(cnt):
        if flags[i] == 2:
            done[i] = 1  # parameter walk overflow: leave to caller
        elif u[i] == ZERO or v[i] == ZERO:
            flags[i] = 1
            done[i] = 1
    # V_{d * 2^j} == 0 for some 1 <= j < s also passes
    rnd = ONE
    while rnd < smax:
        for i in range(cnt):
            if done[i] == 0 and rnd < ss[i]:
                m = nv[i]
                vi = v[i]
                qi = qk[i]
                t2q = qi + qi
                if t2q >= m:
                    t2q -= m
                f2 = np.float64(vi) * np.float64(vi)
                q_ = np.uint64(f2 * ri[i])
                vv = vi * vi - q_ * m
                for _ in range(4):
                    if vv >= SIGN_BIT:
                        vv += m
                for _ in range(4):
                    if vv >= m:
                        vv -= m
                vn = vv + m - t2q
                if vn >= m:
                    vn -= m
                v[i] = vn
                if vn == ZERO:
                    flags[i] = 1
                    done[i] = 1
                f3 = np.float64(qi) * np.float64(qi)
                q_ = np.uint64(f3 * ri[i])
                qn = qi * qi - q_ * m
                for _ in range(4):
                    if qn >= SIGN_BIT:
                        qn += m
                for _ in range(4):
                    if qn >= m:
                        qn -= m
                qk[i] = qn
        rnd += ONE
    return overflow


# --------------------------------------------------------------------------
# box sweep: sum of d(4*l*a*a + 1) over V < l <= 2V, a in [a_lo, a_hi)
# --------------------------------------------------------------------------

# leftover-kind codes and their divisor-count multipliers {1: none, p, p*p, p*q}
_LEFT_MULT = np.array([1, 2, 3, 4], np.uint32)


@njit(cache=True, nogil=True)
def _fermat_roots(asq4, primes, prinv, vmod, rootl0, validate):
    """rootl0[t] <- the l (mod p) with p | 4*a*a*l + 1, shifted to offset form.

    Writes the offset of the first hit in the column (l index, 0-based) or
    -1 when p | 4*a*a (no root).  Returns the number of root-check failures
    when validate is on (always 0; a nonzero count is a kernel bug).
    """
    npn = primes.shape[0]
    bad = 0
    xs = np.empty(npn, np.uint64)
    acc = np.empty(npn, np.uint64)
    af = np.float64(asq4)
    for t in range(npn):
        p = primes[t]
        q = np.uint64(af * prinv[t])
        r = asq4 - q * p
        if r >= p:  # one correction suffices: quotient error < 1
            r -= p
        if r >= p:
            r -= p
        xs[t] = r
        acc[t] = ONE
    # acc <- xs**(p-2) mod p  (left-to-right ladder, exponent bits of p-2)
    for bit in range(18, -1, -1):
        bb = np.uint64(bit)
        for t in range(npn):
            p = primes[t]
            a_ = acc[t]
            f = np.float64(a_)
            q = np.uint64(f * f * prinv[t])
            r = a_ * a_ - q * p
            if r >= p:
                r -= p
            if r >= p:
                r -= p
            e = p - TWO
            if ((e >> bb) & ONE) == ONE:
                f2 = np.float64(r) * np.float64(xs[t])
                q2 = np.uint64(f2 * prinv[t])
                r2 = r * xs[t] - q2 * p
                if r2 >= p:
                    r2 -= p
                if r2 >= p:
                    r2 -= p
                acc[t] = r2
            else:
                acc[t] = r
    for t in range(npn):
        p = primes[t]
        if xs[t] == ZERO:
            rootl0[t] = -1
            continue
        l0 = p - acc[t]  # the root of 4*a*a*l + 1 = 0: l = -(4 a^2)^(-1)
        if validate:
            f = np.float64(xs[t]) * np.float64(l0)
            q = np.uint64(f * prinv[t])
            r = xs[t] * l0 - q * p
            if r >= p:
                r -= p
            if r >= p:
                r -= p
            if r != p - ONE:
                bad += 1
        off = np.int64(l0) - vmod[t]
        if off < 0:
            off += np.int64(p)
        rootl0[t] = off
    return bad


@njit(cache=True, nogil=True)
def sweep_chunk(a_lo, a_hi, V, primes, pmag, maxq, prinv, vmod, bsq,
                case_mode, z_floor, t_f, sqz_f, validate,
                dump_d, dump_label, out):
    """Accumulate divisor counts (and case sums) for columns a in [a_lo, a_hi).

    out layout (uint64): 0 sum_d, 1 pair count, 2..5 per-case d sums,
    6..9 per-case pair counts, 10 root-check failures, 11 zero-exponent
    hits (both must stay 0), 12 Lucas parameter-walk overflows resolved
    by widening (must stay 0 — see wrapper), 13 max omega(c) seen.
    """
    ncols = a_hi - a_lo
    npairs = ncols * V
    npn = primes.shape[0]

    dmul = np.ones(npairs, np.uint32)
    leftk = np.zeros(npairs, np.uint8)
    cur = np.empty(V, np.uint64)
    rootl0 = np.empty(npn, np.int64)

    cert_val = np.empty(npairs, np.uint64)
    cert_pid = np.empty(npairs, np.int64)
    ncert = 0

    if case_mode:
        bprod = np.ones(npairs, np.uint64)
        bopen = np.ones(npairs, np.uint8)
        pcbuf = np.zeros(npairs, np.uint32)
        comega = np.zeros(npairs, np.uint8)
    else:
        bprod = np.ones(1, np.uint64)
        bopen = np.ones(1, np.uint8)
        pcbuf = np.zeros(1, np.uint32)
        comega = np.zeros(1, np.uint8)

    for col in range(ncols):
        a = np.uint64(a_lo + col)
        base = col * V
        asq4 = np.uint64(4) * a * a
        out[10] += np.uint64(_fermat_roots(asq4, primes, prinv, vmod,
                                           rootl0, validate))
        lv = np.uint64(V + 1)
        for idx in range(V):
            cur[idx] = asq4 * (lv + np.uint64(idx)) + ONE

        for t in range(npn):
            off = rootl0[t]
            if off < 0:
                continue
            p = primes[t]
            pi = np.int64(p)
            mq = maxq[t]
            mg = pmag[t]
            idx = off
            while idx < V:
                c = cur[idx]
                q = c * mg
                e = ZERO
                while q <= mq:
                    c = q
                    e += ONE
                    q = c * mg
                if e == ZERO:
                    out[11] += ONE
                else:
                    cur[idx] = c
                    pid = base + idx
                    dmul[pid] = dmul[pid] * np.uint32(e + ONE)
                    if case_mode:
                        if bopen[pid] == 1:
                            pw = ONE
                            for _ in range(e):
                                pw *= p
                            fits = False
                            if pw <= z_floor:
                                if bprod[pid] <= z_floor // pw:
                                    fits = True
                            if fits:
                                bprod[pid] = bprod[pid] * pw
                            else:
                                bopen[pid] = 0
                                pcbuf[pid] = np.uint32(p)
                                comega[pid] = comega[pid] + np.uint8(e)
                        else:
                            comega[pid] = comega[pid] + np.uint8(e)
                idx += pi

        for idx in range(V):
            r = cur[idx]
            pid = base + idx
            if r == ONE:
                pass
            elif r <= bsq:
                leftk[pid] = 1  # single prime > B
            else:
                cert_val[ncert] = r
                cert_pid[ncert] = pid
                ncert += 1

    # classify leftovers > B*B: prime / p*p / p*q
    if ncert > 0:
        vals = cert_val[:ncert]
        roots = np.empty(ncert, np.uint64)
        issq = np.empty(ncert, np.uint64)
        isqrt_classify(vals, roots, issq)
        nsq = 0
        base2_in = np.empty(ncert, np.uint64)
        base2_map = np.empty(ncert, np.int64)
        nb = 0
        for i in range(ncert):
            if issq[i] == ONE:
                leftk[cert_pid[i]] = 2
                nsq += 1
            else:
                base2_in[nb] = vals[i]
                base2_map[nb] = i
                nb += 1
        if nb > 0:
            b2flags = np.empty(nb, np.uint8)
            base2_strong_batch(base2_in[:nb], b2flags)
            luc_in = np.empty(nb, np.uint64)
            luc_map = np.empty(nb, np.int64)
            nl = 0
            for i in range(nb):
                if b2flags[i] == 0:
                    leftk[cert_pid[base2_map[i]]] = 3  # composite: p*q
                else:
                    luc_in[nl] = base2_in[i]
                    luc_map[nl] = base2_map[i]
                    nl += 1
            if nl > 0:
                lflags = np.empty(nl, np.uint8)
                ovf = lucas_strong_batch(luc_in[:nl], lflags)
                out[12] += np.uint64(ovf)
                for i in range(nl):
                    if lflags[i] == 1:
                        leftk[cert_pid[luc_map[i]]] = 1
                    elif lflags[i] == 0:
                        leftk[cert_pid[luc_map[i]]] = 3
                    # lflags == 2: left at 0; out[12] tells wrapper to redo

    # final accumulation (single ordered pass: deterministic by construction)
    for pid in range(npairs):
        k = leftk[pid]
        d = np.uint64(dmul[pid]) * np.uint64(_LEFT_MULT[k])
        out[0] += d
        out[1] += ONE
        if case_mode:
            c_is_one = (bopen[pid] == 1) and (k == 0)
            if c_is_one:
                lab = 0
            else:
                if bopen[pid] == 1:
                    # rough leftover opens c; its least prime exceeds B
                    pcv = np.float64(4.1e9)  # > any u32 threshold
                else:
                    pcv = np.float64(pcbuf[pid])
                if pcv > sqz_f:
                    lab = 0
                elif np.float64(bprod[pid]) <= sqz_f:
                    lab = 1
                elif pcv <= t_f:
                    lab = 2
                else:
                    lab = 3
            out[2 + lab] += d
            out[6 + lab] += ONE
            om = np.uint64(comega[pid])
            if k == 1:
                om += ONE
            elif k >= 2:
                om += TWO
            if om > out[13]:
                out[13] = om
            if dump_label.shape[0] > 0:
                dump_label[pid] = np.uint8(lab)
        if dump_d.shape[0] > 0:
            dump_d[pid] = np.uint32(d)


# --------------------------------------------------------------------------
# trial-division oracle for d(4*l*a*a + 1) (independent slow path)
# --------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def trial_d_chunk(a_lo, a_hi, V, primes, out_sum, dump_d):
    """Direct per-pair factorization by ascending trial division.

    primes must cover sqrt(max n).  Returns the exact d-sum over the
    sub-box; dump_d (len (a_hi-a_lo)*V or 0) receives per-pair counts.
    """
    npn = primes.shape[0]
    tot = ZERO
    for col in range(a_hi - a_lo):
        a = np.int64(a_lo + col)
        asq4 = np.int64(4) * a * a
        for idx in range(V):
            l = np.int64(V + 1 + idx)
            c = asq4 * l + 1
            d = np.int64(1)
            for t in range(npn):
                p = primes[t]
                if p * p > c:
                    break
                if c % p == 0:
                    e = 0
                    while c % p == 0:
                        c //= p
                        e += 1
                    d *= e + 1
            if c > 1:
                d *= 2
            tot += np.uint64(d)
            if dump_d.shape[0] > 0:
                dump_d[col * V + idx] = np.uint32(d)
    out_sum[0] += tot


# --------------------------------------------------------------------------
# ordered Type I / Type II counts for odd primes via the divisor method
# --------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def typesplit_batch(ps, lpf, f1_out, f2_out):
    """Ordered Type-I/II solution counts of 4/p = 1/n1+1/n2+1/n3 per odd prime.

    For n1 in (p/4, 3p/4] the reduced remainder has numerator 4*n1-p and
    denominator p*n1, coprime; solutions correspond to divisors
    u = p**j * v (v | n1**2, j in 0..2) of (p*n1)**2 with u <= p*n1 and
    (u + p*n1) % (4*n1-p) == 0.  Then p | n2 iff j >= 1 and p | n3 iff
    j <= 1, so j in {0, 2} counts Type I and j = 1 Type II.  Weights are
    the permutation counts 6/3/1 of the nondecreasing triple.
    """
    divbuf = np.empty(32768, np.int64)
    for w in range(ps.shape[0]):
        p = ps[w]
        f1 = np.int64(0)
        f2 = np.int64(0)
        for n1 in range(p // 4 + 1, (3 * p) // 4 + 1):
            nr = 4 * n1 - p
            dr = p * n1
            # divisors of n1**2 from the lpf factorization of n1
            nd = 1
            divbuf[0] = 1
            m = n1
            while m > 1:
                q = np.int64(lpf[m])
                e = 0
                while m % q == 0:
                    m //= q
                    e += 1
                base = nd
                pw = np.int64(1)
                for z in range(2 * e):
                    pw *= q
                    for t in range(base):
                        divbuf[nd] = divbuf[t] * pw
                        nd += 1
            pj = np.int64(1)
            for j in range(3):
                for t in range(nd):
                    v = divbuf[t]
                    # u = p**j * v <= dr = p*n1, compared without overflow
                    if j == 0:
                        if v > dr:
                            continue
                        u = v
                    elif j == 1:
                        if v > n1:
                            continue
                        u = pj * v
                    else:
                        if pj // p * v > n1:  # p*v > n1
                            continue
                        u = pj * v
                    if (u + dr) % nr != 0:
                        continue
                    n2 = (u + dr) // nr
                    if n2 < n1:
                        continue
                    eq12 = n2 == n1
                    eq23 = u == dr
                    if eq12 and eq23:
                        wgt = np.int64(1)
                    elif eq12 or eq23:
                        wgt = np.int64(3)
                    else:
                        wgt = np.int64(6)
                    if j == 1:
                        f2 += wgt
                    else:
                        f1 += wgt
                pj *= p
        f1_out[w] = f1
        f2_out[w] = f2
