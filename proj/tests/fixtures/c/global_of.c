#include <stdio.h>

static int table[8] = {1, 2, 3, 4, 5, 6, 7, 8};

static int lookup(size_t idx) { return table[idx]; }

static int decode(const unsigned char *data, size_t n) {
  if (n < 1) return 0;
  return lookup(data[0]);
}

int main(int argc, char **argv) {
  if (argc < 2) return 1;
  FILE *f = fopen(argv[1], "rb");
  if (!f) return 1;
  unsigned char data[64];
  size_t n = fread(data, 1, sizeof(data), f);
  fclose(f);
  printf("%d\n", decode(data, n));
  return 0;
}
