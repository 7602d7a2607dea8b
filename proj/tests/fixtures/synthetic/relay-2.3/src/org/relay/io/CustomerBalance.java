package org.relay.io;

/** Handles channel customer buffer. */
public class CustomerBalance {
  private int bufferInvoice;
  public void queueBuffer() { customerChannel.customerInvoice(); }
  public void userChannel() { customerBuffer.userQueue(); }
  public void customerQueue() { channelUser.invoiceUser(); }
}
