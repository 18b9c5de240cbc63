#include <cstdio>
int main(){printf("acceptance placeholder\n");return 1;}
