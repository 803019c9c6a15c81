// placeholder, replaced by the cli implementation
int main() { return 0; }
