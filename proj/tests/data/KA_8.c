/* KA_8: 5 vector instructions, 8 doubles per vector. */
#include <immintrin.h>

void KA_8(const double* src0, const double* src1, double* dest) {
  __m512d v0 = _mm512_maskz_loadu_pd((__mmask8)0x3f, &src0[0]);
  __m512d v1 = _mm512_maskz_loadu_pd((__mmask8)0x3f, &src1[0]);
  __m512d v2 = _mm512_add_pd(v0, v1);
  __m512d v3 = _mm512_permutexvar_pd(_mm512_set_epi64(0,0,1,0,5,4,3,2), v2);
  _mm512_mask_storeu_pd(&dest[0], (__mmask8)0x3f, v3);
}
