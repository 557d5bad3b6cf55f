#include <stdio.h>

static int scale(int v, int shift) { return v << shift; }

static int apply(const unsigned char *data, size_t n) {
  if (n < 2) return 0;
  return scale(data[0], data[1]);
}

int main(int argc, char **argv) {
  if (argc < 2) return 1;
  FILE *f = fopen(argv[1], "rb");
  if (!f) return 1;
  unsigned char data[64];
  size_t n = fread(data, 1, sizeof(data), f);
  fclose(f);
  printf("%d\n", apply(data, n));
  return 0;
}
